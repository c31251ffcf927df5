"""Integral Chevalley basis of a simple Lie algebra.

Basis layout (0-based): ``e_a`` for the ``n`` positive roots in root-system
order, then ``f_a = e_{-a}`` in the same order, then ``h_1..h_r`` (simple
coroots). Signs are fixed by declaring ``N(a, b) = +(p + 1)`` on every
extraspecial pair and propagating through the usual identities between
structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .roots import Root, RootSystem, root_system

Element = dict[int, int]


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _is_positive(a: Root) -> bool:
    return any(x > 0 for x in a)


class _StructureConstants:
    """``N(a, b)`` for arbitrary roots with ``a + b`` a root."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.norm = {}
        for r in rs.positive_roots:
            self.norm[r] = self.norm[_neg(r)] = rs.norm(r)
        self.pos: dict[tuple[Root, Root], int] = {}
        self.extraspecial: dict[Root, tuple[Root, Root]] = {}
        self._fill()

    def _fill(self):
        rs = self.rs
        order = rs.index_of
        simples = rs.positive_roots[: rs.rank]
        for xi in rs.positive_roots[rs.rank:]:
            alpha = next(s for s in simples if _add(xi, _neg(s)) in order)
            beta = _add(xi, _neg(alpha))
            self.extraspecial[xi] = (alpha, beta)
            n0 = rs.string_bottom(alpha, beta) + 1
            self._set(alpha, beta, n0)
            for a in rs.positive_roots:
                if order[a] >= order[xi]:
                    break
                b = _add(xi, _neg(a))
                if b not in order or order[a] >= order[b] or (a, b) == (alpha, beta):
                    continue
                val = Fraction(0)
                d = _add(b, _neg(alpha))
                if self.rs.is_root(d):
                    val += Fraction(self(b, _neg(alpha)) * self(a, _neg(beta))) / self.norm[d]
                d = _add(a, _neg(alpha))
                if self.rs.is_root(d):
                    val += Fraction(self(_neg(alpha), a) * self(b, _neg(beta))) / self.norm[d]
                val *= self.norm[xi] / n0
                if val.denominator != 1:
                    raise ArithmeticError(f"non-integral N({a}, {b}) = {val}")
                self._set(a, b, int(val))

    def _set(self, a: Root, b: Root, v: int):
        self.pos[(a, b)] = v
        self.pos[(b, a)] = -v

    def __call__(self, a: Root, b: Root) -> int:
        a_pos, b_pos = _is_positive(a), _is_positive(b)
        if a_pos and b_pos:
            return self.pos.get((a, b), 0)
        if not a_pos and not b_pos:
            return -self.pos.get((_neg(a), _neg(b)), 0)
        s = _add(a, b)
        if not any(s) or not self.rs.is_root(s):
            return 0
        c = _neg(s)
        # a + b + c = 0:  N(a,b)/|c|^2 = N(b,c)/|a|^2 = N(c,a)/|b|^2
        if _is_positive(b) == _is_positive(c):
            v = self.norm[c] * self(b, c) / self.norm[a]
        else:
            v = self.norm[c] * self(c, a) / self.norm[b]
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral N({a}, {b})")
        return int(v)


@dataclass(eq=False)
class ChevalleyAlgebra:
    rs: RootSystem
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = field(repr=False)
    extraspecial: dict[Root, tuple[Root, Root]] = field(repr=False)
    N: _StructureConstants = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rs.lie_dim

    @property
    def n(self) -> int:
        return self.rs.n_positive

    @property
    def rank(self) -> int:
        return self.rs.rank

    def root_of(self, i: int) -> Root | None:
        """Root attached to basis index ``i`` (``None`` for Cartan elements)."""
        n = self.n
        if i < n:
            return self.rs.positive_roots[i]
        if i < 2 * n:
            return _neg(self.rs.positive_roots[i - n])
        return None

    def index(self, a: Root) -> int:
        """Basis index of the root vector ``e_a`` (``a`` positive or negative)."""
        a = tuple(a)
        idx = self.rs.index_of.get(a)
        if idx is not None:
            return idx
        return self.n + self.rs.index_of[_neg(a)]

    def e(self, a: Root, c: int = 1) -> Element:
        return {self.index(a): c}

    def f(self, a: Root, c: int = 1) -> Element:
        return {self.index(_neg(tuple(a))): c}

    def h(self, i: int) -> Element:
        """Simple coroot ``h_i`` (1-based)."""
        return {2 * self.n + i - 1: 1}

    def label(self, i: int) -> str:
        n = self.n
        if i < n:
            return "e_" + "".join(map(str, self.rs.positive_roots[i]))
        if i < 2 * n:
            return "f_" + "".join(map(str, self.rs.positive_roots[i - n]))
        return f"h_{i - 2 * n + 1}"

    def structure_constant(self, a: Root, b: Root) -> int:
        return self.N(tuple(a), tuple(b))

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        return self.table.get((i, j), ())

    def bracket(self, x: Mapping[int, int], y: Mapping[int, int]) -> Element:
        out: Element = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b:
                    continue
                for k, c in self.table.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def ad_basis(self, x: Mapping[int, int]) -> list[list[tuple[int, int]]]:
        """Sparse columns of ``ad x``: column ``j`` lists ``(row, coeff)``."""
        cols: list[dict[int, int]] = [dict() for _ in range(self.dim)]
        for i, a in x.items():
            if not a:
                continue
            for j in range(self.dim):
                for k, c in self.table.get((i, j), ()):
                    cols[j][k] = cols[j].get(k, 0) + a * c
        return [[(k, v) for k, v in sorted(col.items()) if v] for col in cols]

    def adjoint_matrix(self, x: Mapping[int, int]) -> np.ndarray:
        """Matrix of ``ad x``; column ``j`` holds the coefficients of ``[x, B_j]``."""
        m = np.zeros((self.dim, self.dim), dtype=object)
        for j, col in enumerate(self.ad_basis(x)):
            for k, v in col:
                m[k, j] = v
        return m


def build_algebra(rs: RootSystem | str) -> ChevalleyAlgebra:
    if isinstance(rs, str):
        rs = root_system(rs)
    N = _StructureConstants(rs)
    n, r = rs.n_positive, rs.rank
    roots = list(rs.positive_roots) + [_neg(a) for a in rs.positive_roots]
    index = {a: k for k, a in enumerate(roots)}
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    for i, a in enumerate(roots):
        for j, b in enumerate(roots):
            s = _add(a, b)
            if not any(s):
                sign = 1 if i < n else -1
                cor = rs.coroot_coeffs(a if sign > 0 else _neg(a))
                table[(i, j)] = tuple((2 * n + k, sign * c) for k, c in enumerate(cor) if c)
            elif s in index:
                table[(i, j)] = ((index[s], N(a, b)),)
        for k in range(r):
            w = rs.pairing(a, k)
            if w:
                table[(2 * n + k, i)] = ((i, w),)
                table[(i, 2 * n + k)] = ((i, -w),)
    return ChevalleyAlgebra(rs=rs, table=table, extraspecial=N.extraspecial, N=N)


_CACHE: dict[str, ChevalleyAlgebra] = {}


def algebra(name: str) -> ChevalleyAlgebra:
    alg = _CACHE.get(name)
    if alg is None:
        alg = _CACHE[name] = build_algebra(root_system(name))
    return alg


def element_from_terms(alg: ChevalleyAlgebra, terms: Iterable[tuple[int, Root]]) -> Element:
    out: Element = {}
    for c, a in terms:
        k = alg.index(tuple(a))
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}
