"""Minimal and adjoint modules as integer action matrices.

Each minimal module is cut out of the nilradical of a parabolic in a
bigger algebra:

* E7 on V56: E8 root vectors with a8-coefficient 1, E7 = Levi (a8 = 0);
* E6 on V27: E7 root vectors with a7-coefficient 1, E6 = Levi (a7 = 0);
* F4 on V26: V27 again, F4 folded into E6, modulo the F4-fixed line;
* G2 on V7: D4-natural module (E6 roots with a1 = 1, a6 = 0), G2 folded
  into the D4 Levi, modulo the G2-fixed line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Mapping, Sequence

import numpy as np
import sympy

from .chevalley import ChevalleyAlgebra, Element, algebra
from .roots import Root, subsystem_roots

MIN_DIMS = {"G2": 7, "F4": 26, "E6": 27, "E7": 56}
GROUPS_MINIMAL = tuple(MIN_DIMS)
GROUPS_ADJOINT = ("G2", "F4", "E6", "E7", "E8")


class EmbeddingError(RuntimeError):
    pass


@dataclass(frozen=True)
class EmbeddingSpec:
    group: str
    ambient: str
    # 1-based simple index of ``group`` -> 1-based simple indices of ``ambient``
    folding: Mapping[int, tuple[int, ...]]
    levi_pattern: Mapping[int, int]


FOLDINGS = {
    "F4": EmbeddingSpec("F4", "E6", {1: (2,), 2: (4,), 3: (3, 5), 4: (1, 6)}, {}),
    "G2": EmbeddingSpec("G2", "E6", {1: (2, 3, 5), 2: (4,)}, {1: 0, 6: 0}),
    "E6": EmbeddingSpec("E6", "E7", {i: (i,) for i in range(1, 7)}, {7: 0}),
    "E7": EmbeddingSpec("E7", "E8", {i: (i,) for i in range(1, 8)}, {8: 0}),
}


def _lin(images: Sequence[Element], x: Mapping[int, int]) -> Element:
    out: Element = {}
    for i, c in x.items():
        for k, v in images[i].items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _scale_exact(x: Element, d: int) -> Element:
    out = {}
    for k, v in x.items():
        if v % d:
            raise EmbeddingError(f"inconsistent folding: {v} not divisible by {d}")
        out[k] = v // d
    return out


@dataclass(eq=False)
class Embedding:
    """Lie algebra homomorphism ``small -> ambient`` on Chevalley bases."""

    small: ChevalleyAlgebra
    ambient: ChevalleyAlgebra
    images: list[Element]

    def __call__(self, x: Mapping[int, int]) -> Element:
        return _lin(self.images, x)

    def then(self, other: "Embedding") -> "Embedding":
        if other.small is not self.ambient:
            raise ValueError("embeddings do not compose")
        return Embedding(self.small, other.ambient, [other(im) for im in self.images])

    def check_homomorphism(self, pairs=None) -> None:
        s, a = self.small, self.ambient
        idx = range(s.dim)
        pairs = pairs if pairs is not None else ((i, j) for i in idx for j in idx)
        for i, j in pairs:
            lhs = self(s.bracket({i: 1}, {j: 1}))
            rhs = a.bracket(self.images[i], self.images[j])
            if lhs != rhs:
                raise EmbeddingError(f"not a homomorphism on ({s.label(i)}, {s.label(j)})")


def build_embedding(spec: EmbeddingSpec) -> Embedding:
    """Extend images of simple generators to the whole Chevalley basis.

    ``e_xi`` for non-simple ``xi`` with extraspecial pair ``(a, b)`` maps to
    ``[phi(e_a), phi(e_b)] / N(a, b)``; negative root vectors likewise.
    """
    small, amb = algebra(spec.group), algebra(spec.ambient)
    rs, ars = small.rs, amb.rs
    images: list[Element | None] = [None] * small.dim
    for i, targets in spec.folding.items():
        images[small.index(rs.simple_root(i))] = {amb.index(ars.simple_root(j)): 1 for j in targets}
        images[small.index(tuple(-x for x in rs.simple_root(i)))] = {
            amb.index(tuple(-x for x in ars.simple_root(j))): 1 for j in targets
        }
    for xi in rs.positive_roots[rs.rank:]:
        a, b = small.extraspecial[xi]
        for sign in (1, -1):
            sa, sb = tuple(sign * x for x in a), tuple(sign * x for x in b)
            val = amb.bracket(images[small.index(sa)], images[small.index(sb)])
            n_ab = small.structure_constant(sa, sb)
            images[small.index(tuple(sign * x for x in xi))] = _scale_exact(val, n_ab)
    for i in range(1, rs.rank + 1):
        e_i = images[small.index(rs.simple_root(i))]
        f_i = images[small.index(tuple(-x for x in rs.simple_root(i)))]
        images[2 * small.n + i - 1] = amb.bracket(e_i, f_i)
    emb = Embedding(small, amb, images)
    for im in images:
        for k in im:
            r = amb.root_of(k)
            if r is not None and any(abs(r[p - 1]) != v for p, v in spec.levi_pattern.items()):
                raise EmbeddingError(f"image leaves the Levi: {amb.label(k)}")
    gens = [small.index(rs.simple_root(i)) for i in range(1, rs.rank + 1)]
    gens += [small.index(tuple(-x for x in rs.simple_root(i))) for i in range(1, rs.rank + 1)]
    emb.check_homomorphism((g, j) for g in gens for j in range(small.dim))
    return emb


def fold_element(spec: EmbeddingSpec, x: Mapping[int, int]) -> Element:
    return embedding_for(spec.group)(x)


@lru_cache(maxsize=None)
def embedding_for(group: str) -> Embedding:
    return build_embedding(FOLDINGS[group])


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Primitive integer vectors spanning the rational kernel."""
    basis = sympy.Matrix(rows).nullspace()
    out = []
    for v in basis:
        den = sympy.ilcm(*[x.q for x in v]) if len(v) else 1
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = gcd(g, x)
        w = [x // g for x in w]
        if next(x for x in w if x) < 0:
            w = [-x for x in w]
        out.append(w)
    return out


def _unimodular_completion(v: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """``U`` unimodular with ``U v = e_1``, together with ``U^{-1}``."""
    n = len(v)
    w = [int(x) for x in v]
    U = np.eye(n, dtype=object)
    Ui = np.eye(n, dtype=object)
    # bring the entry of smallest nonzero size to the front first
    j0 = min((i for i in range(n) if w[i]), key=lambda i: abs(w[i]))
    if j0:
        U[[0, j0]] = U[[j0, 0]]
        Ui[:, [0, j0]] = Ui[:, [j0, 0]]
        w[0], w[j0] = w[j0], w[0]
    for i in range(1, n):
        if not w[i]:
            continue
        g, s, t = _egcd(w[0], w[i])
        a, b = w[0] // g, w[i] // g
        r0, ri = U[0].copy(), U[i].copy()
        U[0], U[i] = s * r0 + t * ri, -b * r0 + a * ri
        c0, ci = Ui[:, 0].copy(), Ui[:, i].copy()
        Ui[:, 0], Ui[:, i] = a * c0 + b * ci, -t * c0 + s * ci
        w[0], w[i] = g, 0
    if w[0] != 1:
        raise EmbeddingError(f"fixed vector is not primitive (content {w[0]})")
    return U, Ui


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(eq=False)
class ModuleAction:
    group: str
    module_kind: str
    dim: int
    basis_labels: list
    algebra: ChevalleyAlgebra
    _matrix: object = field(repr=False)
    # for quotient modules: ambient vector -> module coordinates
    _coords: object = field(default=None, repr=False)
    fixed_vector: list[int] | None = None

    def matrix_of(self, x: Mapping[int, int]) -> np.ndarray:
        return self._matrix(x)

    def coords(self, v: Sequence[int]) -> np.ndarray:
        """Module coordinates of a vector given in the spanning basis."""
        v = np.asarray(v, dtype=object)
        return v if self._coords is None else self._coords(v)

    def ambient_vector(self, terms: Sequence[tuple[int, Root]]) -> np.ndarray:
        """Spanning-basis vector for a formal sum of ambient root vectors."""
        labels = self.span_labels
        v = np.zeros(len(labels), dtype=object)
        pos = {lab: k for k, lab in enumerate(labels)}
        for c, r in terms:
            r = tuple(r)
            if r not in pos:
                raise KeyError(f"root {r} is not a weight of the module span")
            v[pos[r]] += c
        return v

    span_labels: list = field(default_factory=list)


def _span_action(emb: Embedding, span: list[Root]):
    amb = emb.ambient
    idx = [amb.index(r) for r in span]
    pos = {k: j for j, k in enumerate(idx)}

    def matrix(x: Mapping[int, int]) -> np.ndarray:
        y = emb(x)
        m = np.zeros((len(idx), len(idx)), dtype=object)
        for j, k in enumerate(idx):
            for kk, c in amb.bracket(y, {k: 1}).items():
                if kk not in pos:
                    raise EmbeddingError(f"action leaves the module span at {amb.label(kk)}")
                m[pos[kk], j] += c
        return m

    return matrix


@lru_cache(maxsize=None)
def embed_minimal(group: str) -> ModuleAction:
    if group not in MIN_DIMS:
        raise ValueError(f"no minimal module for {group}")
    if group == "E7":
        emb = embedding_for("E7")
        span = subsystem_roots(emb.ambient.rs, {8: 1})
    elif group in ("E6", "F4"):
        emb = embedding_for(group)
        if group == "F4":
            emb = emb.then(embedding_for("E6"))
        span = subsystem_roots(emb.ambient.rs, {7: 1})
    else:
        emb = embedding_for("G2")
        span = subsystem_roots(emb.ambient.rs, {1: 1, 6: 0})
    full = _span_action(emb, span)
    small = emb.small
    if len(span) == MIN_DIMS[group]:
        return ModuleAction(group, "minimal", len(span), list(span), small, full, span_labels=list(span))

    rs = small.rs
    gens = [{small.index(rs.simple_root(i)): 1} for i in range(1, rs.rank + 1)]
    gens += [{small.index(tuple(-x for x in rs.simple_root(i))): 1} for i in range(1, rs.rank + 1)]
    stacked = np.vstack([full(g) for g in gens])
    ker = integer_kernel(stacked.tolist())
    if len(ker) != 1:
        raise EmbeddingError(f"{group}: fixed space has dimension {len(ker)}, expected 1")
    v0 = ker[0]
    U, Ui = _unimodular_completion(v0)
    unit = [i for i, x in enumerate(v0) if abs(x) == 1]
    if unit:
        # drop one coordinate where v0 has a unit entry: x -> x - (x_j / v0_j) v0
        j0 = unit[-1]
        keep = [i for i in range(len(span)) if i != j0]
        U = np.zeros((len(span), len(span)), dtype=object)
        U[0, j0] = v0[j0]
        for r, i in enumerate(keep, start=1):
            U[r, i] = 1
            U[r, j0] = -v0[i] * v0[j0]
        Ui = np.zeros_like(U)
        Ui[:, 0] = v0
        for r, i in enumerate(keep, start=1):
            Ui[i, r] = 1
        labels = [span[i] for i in keep]
    else:
        labels = [f"q{k}" for k in range(1, len(span))]

    def quotient(x: Mapping[int, int]) -> np.ndarray:
        a = full(x)
        if a.dot(np.asarray(v0, dtype=object)).any():
            raise EmbeddingError("submodule not preserved")
        return U.dot(a).dot(Ui)[1:, 1:]

    def coords(v: np.ndarray) -> np.ndarray:
        return U.dot(v)[1:]

    return ModuleAction(
        group, "minimal", len(span) - 1, labels, small, quotient, coords, list(v0), span_labels=list(span)
    )


@lru_cache(maxsize=None)
def embed_adjoint(group: str) -> ModuleAction:
    alg = algebra(group)
    labels = [alg.label(i) for i in range(alg.dim)]
    return ModuleAction(group, "adjoint", alg.dim, labels, alg, alg.adjoint_matrix, span_labels=labels)


def module_action(group: str, kind: str) -> ModuleAction:
    if kind == "minimal":
        return embed_minimal(group)
    if kind == "adjoint":
        return embed_adjoint(group)
    raise ValueError(f"unknown module kind {kind!r}")


def action_matrix(ma: ModuleAction, e: Mapping[int, int]) -> np.ndarray:
    return ma.matrix_of(e)
