"""Root systems from Cartan matrices (Bourbaki numbering).

Positive roots are integer coefficient vectors over the simple roots,
enumerated by the usual string closure: for a root ``b`` and simple root
``a_i`` the ``a_i``-string through ``b`` runs from ``b - p a_i`` to
``b + q a_i`` with ``p - q = <b, a_i^vee>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Root = tuple[int, ...]


class CartanError(ValueError):
    pass


def _chain(n: int) -> list[list[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def cartan_matrix(type_label: str, rank: int | None = None) -> "CartanMatrix":
    """Bourbaki Cartan matrix; accepts ``("E", 8)`` or ``"E8"``.

    Entries follow ``C[i][j] = <a_i, a_j^vee>``, so ``C[i][j] = -2``
    means ``a_i`` is long and ``a_j`` short.
    """
    if rank is None:
        type_label, rank = type_label[0], int(type_label[1:])
    t = type_label.upper()
    n = rank
    if n < 1:
        raise CartanError("rank must be positive")
    if t == "A":
        c = _chain(n)
    elif t == "B":
        if n < 2:
            raise CartanError("B_n needs n >= 2")
        c = _chain(n)
        c[n - 2][n - 1] = -2
    elif t == "C":
        if n < 2:
            raise CartanError("C_n needs n >= 2")
        c = _chain(n)
        c[n - 1][n - 2] = -2
    elif t == "D":
        if n < 3:
            raise CartanError("D_n needs n >= 3")
        c = _chain(n)
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    elif t == "E":
        if n not in (6, 7, 8):
            raise CartanError("E_n needs n in 6, 7, 8")
        c = [[0] * n for _ in range(n)]
        for i in range(n):
            c[i][i] = 2
        # 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
        for i, j in edges:
            c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    elif t == "F":
        if n != 4:
            raise CartanError("F_n needs n = 4")
        c = _chain(4)
        c[1][2] = -2
    elif t == "G":
        if n != 2:
            raise CartanError("G_n needs n = 2")
        c = [[2, -1], [-3, 2]]
    else:
        raise CartanError(f"unknown type {type_label!r}")
    return CartanMatrix(t, n, tuple(tuple(r) for r in c))


@dataclass(frozen=True)
class CartanMatrix:
    type_label: str
    rank: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rank
        e = self.entries
        if len(e) != n or any(len(r) != n for r in e):
            raise CartanError("Cartan matrix must be rank x rank")
        for i in range(n):
            if e[i][i] != 2:
                raise CartanError(f"diagonal entry {i} is {e[i][i]}, expected 2")
            for j in range(n):
                if i == j:
                    continue
                if e[i][j] not in (0, -1, -2, -3):
                    raise CartanError(f"bad off-diagonal entry {e[i][j]} at ({i}, {j})")
                if (e[i][j] == 0) != (e[j][i] == 0):
                    raise CartanError(f"asymmetric zero pattern at ({i}, {j})")

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"


def _symmetrizer(c: CartanMatrix) -> list[Fraction]:
    """Squared lengths of simple roots, shortest normalised to 2."""
    n = c.rank
    norms: list[Fraction | None] = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        norms[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and c.entries[i][j] != 0 and norms[j] is None:
                    # C[i][j] |a_j|^2 = C[j][i] |a_i|^2
                    norms[j] = norms[i] * c.entries[j][i] / c.entries[i][j]
                    stack.append(j)
    shortest = min(norms)
    return [2 * x / shortest for x in norms]


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan: CartanMatrix
    positive_roots: tuple[Root, ...]
    simple_norms: tuple[Fraction, ...]
    index_of: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def name(self) -> str:
        return self.cartan.name

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def lie_dim(self) -> int:
        return 2 * self.n_positive + self.rank

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def simple_root(self, i: int) -> Root:
        """Simple root ``a_i`` with 1-based Bourbaki index ``i``."""
        v = [0] * self.rank
        v[i - 1] = 1
        return tuple(v)

    def is_root(self, a: Sequence[int]) -> bool:
        a = tuple(a)
        if a in self.index_of:
            return True
        return tuple(-x for x in a) in self.index_of

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """Symmetric bilinear form, short roots of squared length 2."""
        c = self.cartan.entries
        s = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj and c[i][j]:
                    s += ai * bj * c[i][j] * self.simple_norms[j] / 2
        return s

    def norm(self, a: Sequence[int]) -> Fraction:
        return self.inner(a, a)

    def pairing(self, a: Sequence[int], j: int) -> int:
        """``<a, a_j^vee>`` for 0-based simple index ``j``."""
        c = self.cartan.entries
        return sum(a[i] * c[i][j] for i in range(self.rank))

    def coroot_coeffs(self, a: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of ``a^vee`` over the simple coroots."""
        na = self.norm(a)
        out = []
        for i, ai in enumerate(a):
            x = ai * self.simple_norms[i] / na
            if x.denominator != 1:
                raise ArithmeticError(f"non-integral coroot for {a}")
            out.append(int(x))
        return tuple(out)

    def string_bottom(self, a: Root, b: Root) -> int:
        """Largest ``p`` with ``b - p a`` a root."""
        p = 0
        while self.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    def render(self, a: Root) -> str:
        return " ".join(str(x) for x in a)


def height(a: Iterable[int]) -> int:
    return sum(a)


def build_root_system(cartan: CartanMatrix | str) -> RootSystem:
    """Enumerate positive roots by string closure over the simple roots."""
    if isinstance(cartan, str):
        cartan = cartan_matrix(cartan)
    n = cartan.rank
    c = cartan.entries
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simples)
    layer = list(simples)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                # p: how far down the a_i-string from b still gives roots
                p = 0
                probe = list(b)
                while True:
                    probe[i] -= 1
                    t = tuple(probe)
                    if t in found:
                        p += 1
                    else:
                        break
                pairing = sum(b[k] * c[k][i] for k in range(n))
                q = p - pairing
                if q > 0:
                    up = list(b)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    rest = sorted((r for r in found if sum(r) > 1), key=lambda r: (sum(r), r))
    ordered = tuple(simples) + tuple(rest)
    return RootSystem(
        cartan=cartan,
        positive_roots=ordered,
        simple_norms=tuple(_symmetrizer(cartan)),
        index_of={r: k for k, r in enumerate(ordered)},
    )


def root_sum(rs: RootSystem, a: Root, b: Root) -> Root | None:
    s = tuple(x + y for x, y in zip(a, b))
    if any(s) and rs.is_root(s):
        return s
    return None


def subsystem_roots(rs: RootSystem, predicate: Callable[[Root], bool] | dict[int, int]) -> list[Root]:
    """Positive roots matching a coefficient pattern.

    ``predicate`` is either a callable or a mapping from 1-based simple
    index to the required coefficient.
    """
    if isinstance(predicate, dict):
        pattern = dict(predicate)
        predicate = lambda r: all(r[i - 1] == v for i, v in pattern.items())  # noqa: E731
    return [r for r in rs.positive_roots if predicate(r)]


_CACHE: dict[str, RootSystem] = {}


def root_system(name: str) -> RootSystem:
    """Cached root system by name, e.g. ``"E7"``."""
    rs = _CACHE.get(name)
    if rs is None:
        rs = _CACHE[name] = build_root_system(cartan_matrix(name))
    return rs
