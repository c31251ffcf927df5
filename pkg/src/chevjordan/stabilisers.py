"""Vector and line stabilisers in g of vectors of the minimal module.

For v in V_min the matrix ``M`` has one row per Chevalley basis element
``b`` holding the coordinates of ``b.v``. Then ``dim g_v = dim g - rank M``,
and ``Stab_g<v>`` is one larger exactly when ``v`` lies in the row space,
i.e. when appending ``v`` as an extra row leaves the rank unchanged.
Ranks are exact over Q and over F_p for each prime dividing an elementary
divisor; all other primes behave like characteristic zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .catalogue import root_from_display
from .linalg import (
    Poly,
    diagonal_form,
    function_field_candidate_primes,
    poly,
    primes_of,
    rank_over_function_field,
)
from .modules import MIN_DIMS, ModuleAction, module_action
from .roots import root_system

# good primes are those above the bound
GOOD_ABOVE = {"G2": 3, "F4": 3, "E6": 3, "E7": 3, "E8": 5}


class StabiliserError(RuntimeError):
    pass


def is_good_prime(group: str, p: int) -> bool:
    return p > GOOD_ABOVE[group]


# --- group-side dimensions from root data ---

def lie_dim(type_label: str) -> int:
    """Dimension of a simple algebra (``"B4"``) or a torus (``"T1"``)."""
    if type_label[0] == "T":
        return int(type_label[1:])
    return root_system(type_label).lie_dim


def parabolic_dim(group: str, levi_nodes: Sequence[int]) -> int:
    """dim P = dim L + #roots of the unipotent radical, for the standard parabolic on ``levi_nodes``."""
    rs = root_system(group)
    nodes = set(levi_nodes)
    levi_pos = sum(1 for r in rs.positive_roots if all(c == 0 for i, c in enumerate(r, 1) if i not in nodes))
    radical = rs.n_positive - levi_pos
    return rs.rank + 2 * levi_pos + radical


def structure_dim(spec: str) -> int:
    """Dimension of ``"G2+T1+k14"``-style descriptions; ``.2`` factors add nothing."""
    total = 0
    for piece in spec.split("+"):
        piece = piece.strip().split(".")[0]
        if m := re.fullmatch(r"k(\d+)", piece):
            total += int(m.group(1))
        else:
            total += lie_dim(piece)
    return total


# --- fixtures ---

@dataclass(frozen=True)
class StabiliserFixture:
    group: str
    label: str
    # ambient root vectors; coefficient "t" marks the parameterised term
    terms: tuple[tuple[object, tuple[int, ...]], ...]
    group_dim: int
    line_minus_vector: int
    overrides: tuple[tuple[int, int], ...] = ()

    def column(self, p: int = 0) -> int:
        """The expected ``dim Stab_g<v> - dim g_v`` at characteristic ``p``."""
        return dict(self.overrides).get(p, self.line_minus_vector)

    @property
    def vector_group_dim(self) -> int:
        # group side is smooth in characteristic 0
        return self.group_dim - self.line_minus_vector

    @property
    def parameterized(self) -> bool:
        return any(c == "t" for c, _ in self.terms)


def _ambient(group: str) -> str:
    return {"G2": "E6", "F4": "E7", "E6": "E7", "E7": "E8"}[group]


def _terms(group: str, *items: str):
    amb = _ambient(group)
    out = []
    for s in items:
        c: object = 1
        if s.startswith("t*"):
            c, s = "t", s[2:]
        out.append((c, root_from_display(amb, s)))
    return tuple(out)


def _fx(group, label, terms, dims, col, overrides=()):
    dim = dims if isinstance(dims, int) else structure_dim(dims)
    return StabiliserFixture(group, label, _terms(group, *terms), dim, col, tuple(overrides))


@lru_cache(maxsize=None)
def fixtures(group: str) -> tuple[StabiliserFixture, ...]:
    """Orbit representatives of lines in V_min, written in the ambient algebra."""
    if group == "G2":
        return (
            _fx("G2", "A2", ["1 1 1 1 0;0"], "A2.2", 0),
            _fx("G2", "A1-parabolic", ["1 0 0 0 0;0"], parabolic_dim("G2", [2]), 1),
        )
    if group == "F4":
        a, b, c = "1 1 2 2 1 1;1", "1 2 2 1 1 1;1", "1 3 4 3 2 1;2"
        a7 = "0 0 0 0 0 1;0"
        return (
            _fx("F4", "B4", [a], "B4", 0),
            _fx("F4", "B3-parabolic", [a7], parabolic_dim("F4", [1, 2, 3]), 1),
            _fx("F4", "G2T1+k^14", [a7, c], "G2+T1+k14", 1),
            _fx("F4", "B3+k^7", [a7, b, c], "B3+k7", 0, [(2, 1)]),
            _fx("F4", "D4(generic t)", [b, "t*" + a], "D4", 0),
        )
    if group == "E6":
        return (
            _fx("E6", "D5-parabolic", ["0 0 0 0 0 1;0"], parabolic_dim("E6", [1, 2, 3, 4, 5]), 1),
            _fx("E6", "B4T1+k^16", ["0 0 0 0 0 1;0", "2 3 4 3 2 1;2"], "B4+T1+k16", 1),
            _fx("E6", "F4", ["1 2 2 1 1 1;1", "1 1 2 2 1 1;1", "0 1 2 2 2 1;1"], "F4", 0, [(3, 1)]),
        )
    if group == "E7":
        a8 = "0 0 0 0 0 0 1;0"
        return (
            _fx("E7", "E6-parabolic", [a8], parabolic_dim("E7", [1, 2, 3, 4, 5, 6]), 1),
            _fx("E7", "F4T1+k^26", ["2 3 4 3 2 2 1;2", "1 3 4 3 3 2 1;2", "1 2 4 4 3 2 1;2"], "F4+T1+k26", 1),
            _fx("E7", "B5T1+k^33", ["2 3 5 4 3 2 1;3", "2 4 5 4 3 2 1;2"], "B5+T1+k33", 1),
            _fx("E7", "E6.2", [a8, "2 4 6 5 4 3 1;3"], "E6.2", 0, [(2, 1)]),
        )
    raise StabiliserError(f"no stabiliser fixtures for {group}")


# the single exceptional prime per fixture, if any, and which stabilisers fail there
EXCEPTIONS = {
    ("E7", "F4T1+k^26", 2): "both",
    ("E7", "E6.2", 2): "line",
    ("E6", "F4", 3): "line",
    ("F4", "B3+k^7", 2): "line",
    ("F4", "G2T1+k^14", 3): "both",
    ("G2", "A1-parabolic", 2): "both",
}


def module_vector(ma: ModuleAction, terms, t: int | None = None) -> np.ndarray:
    """Module coordinates of a sum of ambient root vectors."""
    sub = []
    for c, r in terms:
        if c == "t":
            if t is None:
                raise StabiliserError("parameter t needs a value")
            c = t
        sub.append((c, r))
    return ma.coords(ma.ambient_vector(sub))


# --- matrices and dimensions ---

def coefficient_matrix(group: str, v: Sequence[int]) -> np.ndarray:
    """Rows ``b.v`` for ``b`` running over the Chevalley basis of g."""
    ma = module_action(group, "minimal")
    v = np.asarray(v, dtype=object)
    if v.shape != (ma.dim,):
        raise StabiliserError(f"{group}: expected a vector of length {ma.dim}")
    alg = ma.algebra
    rows = [ma.matrix_of({i: 1}).dot(v) for i in range(alg.dim)]
    return np.array(rows, dtype=object).reshape(alg.dim, ma.dim)


def vector_stabiliser_dims(m: np.ndarray, dim_g: int) -> dict[int, int]:
    """``{0: dim g_v over Q, p: dim g_v over F_p}`` for the primes where it differs."""
    piv = diagonal_form(m)
    out = {0: dim_g - len(piv)}
    for p in sorted(primes_of(piv)):
        out[p] = dim_g - sum(1 for x in piv if x % p)
    return out


def line_stabiliser_dims(m: np.ndarray, v: Sequence[int], dims: Mapping[int, int]) -> dict[int, int]:
    """``dim Stab_g<v>`` at each key of ``dims`` plus any new prime from the extended matrix."""
    v = np.asarray(v, dtype=object)
    dim_g = m.shape[0]
    if not v.any():
        return dict(dims)
    piv = diagonal_form(m)
    piv_ext = diagonal_form(np.vstack([m, v.reshape(1, -1)]))
    out = {}
    for p in sorted(set(dims) | primes_of(piv) | primes_of(piv_ext)):
        r = sum(1 for x in piv if x % p) if p else len(piv)
        r_ext = sum(1 for x in piv_ext if x % p) if p else len(piv_ext)
        g_v = dim_g - r
        out[p] = g_v + (1 if r_ext == r else 0)
    return out


# --- reports ---

@dataclass
class StabiliserReport:
    group: str
    label: str
    dim_g_v: dict[int, int]
    dim_stab_line: dict[int, int]
    smooth_vector: dict[int, bool] = field(default_factory=dict)
    smooth_line: dict[int, bool] = field(default_factory=dict)
    fixture: StabiliserFixture | None = field(default=None, repr=False)

    def primes(self) -> list[int]:
        return sorted(set(self.dim_g_v) | set(self.dim_stab_line))

    def at(self, p: int) -> tuple[int, int]:
        """``(dim g_v, dim Stab_g<v>)`` in characteristic ``p`` (0 for Q)."""
        return self.dim_g_v.get(p, self.dim_g_v[0]), self.dim_stab_line.get(p, self.dim_stab_line[0])

    def difference(self, p: int = 0) -> int:
        a, b = self.at(p)
        return b - a

    def exceptions(self) -> list[tuple[int, str]]:
        out = []
        for p in self.primes():
            bad_v = not self.smooth_vector.get(p, True)
            bad_l = not self.smooth_line.get(p, True)
            if bad_v or bad_l:
                out.append((p, "both" if bad_v and bad_l else ("vector" if bad_v else "line")))
        return out


def _judge(rep: StabiliserReport, fx: StabiliserFixture) -> StabiliserReport:
    for p in rep.primes():
        gv, line = rep.at(p)
        rep.smooth_vector[p] = gv == fx.vector_group_dim
        rep.smooth_line[p] = line == fx.group_dim
    return rep


def fixture_report(fx: StabiliserFixture) -> StabiliserReport:
    if fx.parameterized:
        return generic_t_report(fx.group, fx)
    ma = module_action(fx.group, "minimal")
    v = module_vector(ma, fx.terms)
    if not v.any():
        raise StabiliserError(f"{fx.label}: representative is zero in the module")
    m = coefficient_matrix(fx.group, v)
    dims = vector_stabiliser_dims(m, ma.algebra.dim)
    line = line_stabiliser_dims(m, v, dims)
    for p in line:
        dims.setdefault(p, dims[0])
    return _judge(StabiliserReport(fx.group, fx.label, dims, line, fixture=fx), fx)


@dataclass
class GenericTResult:
    zero_rows: int
    kept: list[list[Poly]]
    structural: bool
    rank_Q: int
    rank_mod: dict[int, int]
    line_rank_Q: int
    line_rank_mod: dict[int, int]


def _poly_matrix(group: str, fx: StabiliserFixture) -> tuple[list[list[Poly]], list[Poly]]:
    """``b.v`` with ``v = v_0 + t v_1`` as rows of polynomials in t."""
    ma = module_action(group, "minimal")
    v0 = module_vector(ma, [(c, r) for c, r in fx.terms if c != "t"])
    v1 = module_vector(ma, [(1, r) for c, r in fx.terms if c == "t"])
    m0 = coefficient_matrix(group, v0)
    m1 = coefficient_matrix(group, v1)
    rows = [[poly(int(m0[i, j]), int(m1[i, j])) for j in range(ma.dim)] for i in range(m0.shape[0])]
    vrow = [poly(int(v0[j]), int(v1[j])) for j in range(ma.dim)]
    return rows, vrow


def generic_analysis(group: str = "F4", fx: StabiliserFixture | None = None) -> GenericTResult:
    """Rank of the D4-family coefficient matrix over Q(t) and over F_p(t)."""
    if fx is None:
        fx = next(f for f in fixtures(group) if f.parameterized)
    rows, vrow = _poly_matrix(group, fx)
    kept = [r for r in rows if any(r)]
    zero = len(rows) - len(kept)
    cols = [[j for j, x in enumerate(r) if x] for r in kept]
    flat = [j for c in cols for j in c]
    structural = all(len(c) == 1 for c in cols) and len(set(flat)) == len(flat)
    rank_q = rank_over_function_field(kept)
    ext = kept + [vrow]
    line_q = rank_over_function_field(ext)
    primes = function_field_candidate_primes(kept) | function_field_candidate_primes(ext)
    # the two characteristics singled out for this group are always examined
    primes |= {p for p in (2, 3) if p <= GOOD_ABOVE[group]}
    rank_mod = {p: rank_over_function_field(kept, p) for p in sorted(primes)}
    line_mod = {p: rank_over_function_field(ext, p) for p in sorted(primes)}
    if structural and rank_q != len(kept):
        raise StabiliserError("structural check passed but rank is not full")
    return GenericTResult(zero, kept, structural, rank_q, rank_mod, line_q, line_mod)


def generic_t_report(group: str = "F4", fx: StabiliserFixture | None = None) -> StabiliserReport:
    if fx is None:
        fx = next(f for f in fixtures(group) if f.parameterized)
    res = generic_analysis(group, fx)
    dim_g = root_system(group).lie_dim
    dims = {0: dim_g - res.rank_Q}
    line = {0: dims[0] + (1 if res.line_rank_Q == res.rank_Q else 0)}
    for p, r in res.rank_mod.items():
        dims[p] = dim_g - r
        line[p] = dims[p] + (1 if res.line_rank_mod[p] == r else 0)
    return _judge(StabiliserReport(group, fx.label, dims, line, fixture=fx), fx)


def smoothness_report(group: str) -> list[StabiliserReport]:
    if group not in MIN_DIMS:
        raise StabiliserError(f"stabilisers are computed for {', '.join(MIN_DIMS)}")
    return [fixture_report(fx) for fx in fixtures(group)]


def render_reports(reports: Sequence[StabiliserReport]) -> str:
    lines = [f"{'fixture':<16} {'p':>3} {'dim g_v':>8} {'dim Stab':>9} {'smooth G_v':>11} {'smooth line':>12}"]
    excs = []
    for rep in reports:
        for p in rep.primes():
            gv, line = rep.at(p)
            sv = "yes" if rep.smooth_vector.get(p, True) else "no"
            sl = "yes" if rep.smooth_line.get(p, True) else "no"
            lines.append(f"{rep.label:<16} {p if p else 'Q':>3} {gv:>8} {line:>9} {sv:>11} {sl:>12}")
        excs += [f"({rep.label}, p={p}, {kind})" for p, kind in rep.exceptions()]
    lines.append("exceptions: " + (", ".join(excs) if excs else "none"))
    return "\n".join(lines)
