"""Jordan partitions of nilpotent action matrices, generic and mod p."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linalg import as_int_matrix, diagonal_form, primes_of, rank_mod_p, sparse_matmul

_TERM = re.compile(r"^([1-9]\d*)(?:\^([1-9]\d*))?$")


class PartitionError(ValueError):
    pass


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise PartitionError("parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise PartitionError("parts must be weakly decreasing")

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"23^2,10"``; sizes must strictly decrease."""
        parts: list[int] = []
        last = None
        for term in text.strip().split(","):
            m = _TERM.match(term.strip())
            if not m:
                raise PartitionError(f"malformed partition term {term!r} in {text!r}")
            size, mult = int(m.group(1)), int(m.group(2) or 1)
            if last is not None and size >= last:
                raise PartitionError(f"sizes must strictly decrease in {text!r}")
            last = size
            parts.extend([size] * mult)
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for p in self.parts:
            if out and out[-1][0] == p:
                out[-1] = (p, out[-1][1] + 1)
            else:
                out.append((p, 1))
        return out

    def __str__(self) -> str:
        return ",".join(f"{s}^{m}" if m > 1 else str(s) for s, m in self.multiplicities())

    def tex(self) -> str:
        return ",".join(f"{s}^{{{m}}}" if m > 1 else str(s) for s, m in self.multiplicities())

    def ranks(self) -> list[int]:
        """``rank N^k`` for k = 1, 2, ... down to 0 for a nilpotent ``N`` of this type."""
        out = []
        k = 1
        while True:
            r = sum(max(p - k, 0) for p in self.parts)
            out.append(r)
            if not r:
                return out
            k += 1


def partition_from_ranks(dim: int, ranks: Sequence[int]) -> Partition:
    """Blocks of size >= k number ``rank(M^(k-1)) - rank(M^k)``."""
    seq = [dim] + list(ranks)
    if not ranks or seq[-1] != 0:
        raise NotNilpotentError("rank sequence does not reach 0")
    drops = [seq[k] - seq[k + 1] for k in range(len(seq) - 1)]
    if any(d < 0 for d in drops) or any(drops[k] < drops[k + 1] for k in range(len(drops) - 1)):
        raise PartitionError(f"rank sequence {list(ranks)} is not convex")
    parts = []
    for k in range(len(drops)):
        nxt = drops[k + 1] if k + 1 < len(drops) else 0
        parts.extend([k + 1] * (drops[k] - nxt))
    return Partition.from_parts(parts)


def _power_pivots(m: np.ndarray, mod: int | None = None):
    """Diagonal-form pivots of ``M, M^2, ...`` until the zero power.

    With ``mod`` the powers are taken over F_p and each entry is a list
    of length ``rank mod p`` instead.
    """
    a = as_int_matrix(m)
    if mod:
        a = a % mod
    dim = a.shape[0]
    cur = a
    out = []
    for _ in range(dim + 1):
        if not cur.any():
            out.append([])
            return out
        out.append(diagonal_form(cur) if not mod else [1] * rank_mod_p(cur, mod))
        cur = sparse_matmul(cur, a)
        if mod:
            cur = cur % mod
    raise NotNilpotentError("matrix is not nilpotent")


@dataclass
class JordanReport:
    group: str
    module_kind: str
    orbit_label: str
    dim: int
    generic: Partition | None
    exceptional: dict[int, Partition] = field(default_factory=dict)
    char_only: tuple[int, ...] | None = None
    rank_profile: list[int] = field(default_factory=list, repr=False)

    def rows(self) -> list[tuple[str, Partition]]:
        """(prime-spec, partition) rows in table layout."""
        out = [(str(p), part) for p, part in sorted(self.exceptional.items())]
        if self.generic is not None:
            out.append(("others" if self.exceptional else "all", self.generic))
        return out

    def render(self) -> str:
        return f"{self.orbit_label}: " + "; ".join(f"{p}: {part}" for p, part in self.rows())


def analyze_matrix(m: np.ndarray, char_only: Iterable[int] | None = None):
    """``(generic, {p: partition})`` for a nilpotent integer matrix."""
    a = as_int_matrix(m)
    dim = a.shape[0]
    if char_only:
        found = {}
        for p in sorted(set(char_only)):
            piv = _power_pivots(a, mod=p)
            found[p] = partition_from_ranks(dim, [len(x) for x in piv])
        return None, found, []
    piv = _power_pivots(a)
    ranks = [len(x) for x in piv]
    generic = partition_from_ranks(dim, ranks)
    found = {}
    for p in sorted(primes_of(v for x in piv for v in x)):
        # unimodular reduction: rank mod p = pivots prime to p
        rp = [sum(1 for v in x if v % p) for x in piv]
        part = partition_from_ranks(dim, rp)
        if part != generic:
            found[p] = part
    return generic, found, ranks


def analyze_orbit(ma, e: Mapping[int, int], label: str = "", char_only: Iterable[int] | None = None) -> JordanReport:
    char_only = tuple(sorted(set(char_only))) if char_only else None
    generic, exc, ranks = analyze_matrix(ma.matrix_of(e), char_only)
    return JordanReport(ma.group, ma.module_kind, label, ma.dim, generic, exc, char_only, ranks)


@dataclass(frozen=True)
class Mismatch:
    orbit: str
    slot: str
    expected: str
    computed: str

    def __str__(self) -> str:
        return f"{self.orbit} [{self.slot}]: expected {self.expected}, computed {self.computed}"


def _normalized(rep: JordanReport) -> dict[str, Partition]:
    out: dict[str, Partition] = {}
    if rep.generic is not None:
        out["generic"] = rep.generic
    for p, part in rep.exceptional.items():
        if rep.generic is None or part != rep.generic:
            out[str(p)] = part
    return out


def compare_reports(computed: JordanReport, expected: JordanReport) -> list[Mismatch]:
    """Empty list iff the reports agree once redundant prime rows are dropped."""
    key_c = (computed.group, computed.module_kind, computed.orbit_label)
    key_e = (expected.group, expected.module_kind, expected.orbit_label)
    if key_c != key_e:
        raise ValueError(f"cannot compare {key_c} with {key_e}")
    a, b = _normalized(computed), _normalized(expected)
    out = []

    def slot_order(s):
        return (1, 0) if s == "generic" else (0, int(s))

    for slot in sorted(set(a) | set(b), key=slot_order):
        ca, eb = a.get(slot), b.get(slot)
        if ca != eb:
            missing = "generic" if slot != "generic" else "absent"
            out.append(Mismatch(computed.orbit_label, slot if slot == "generic" else f"p={slot}",
                                str(eb) if eb else missing, str(ca) if ca else missing))
    return out
