"""Orbit representatives and expected Jordan-block tables.

Representatives file, one orbit per line::

    orbit <label> [p=<p1,p2,...>] : <term> + <term> + ...

A term is an optional ``t*`` or integer ``c*`` followed by the root coefficients. For E6, E7
and E8 the coefficients are written ``c1 c3 c4 c5 c6 [c7 [c8]];c2`` (the
two-row Dynkin layout flattened); other types use Bourbaki order.
``#`` starts a comment line.

Expected tables are CSV with header ``group,module,orbit,prime,partition``.
"""

from __future__ import annotations

import io
import os
import re
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .chevalley import ChevalleyAlgebra, Element
from .jordan import JordanReport, Partition, PartitionError
from .roots import Root, root_system

T = "t"

DATA_ENV = "CHEVJORDAN_DATA"
BUILTIN_GROUPS = ("G2", "F4", "E6")
FILE_GROUPS = ("E7", "E8")


class CatalogueError(ValueError):
    pass


class ParseError(CatalogueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f"line {line}" + (f", column {col}" if col else "") + ": " if line else ""
        super().__init__(where + msg)
        self.line, self.col = line, col


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).with_name("data")


_LATEX = [
    (re.compile(r"\\tilde\{?([A-Z])\}?"), r"~\1"),
    (re.compile(r"([A-Z])\u0303"), r"~\1"),
    (re.compile(r"\^\{\(([^)]*)\)\}"), r"^(\1)"),
    (re.compile(r"[_{}$\s]"), ""),
]


def normalize_label(label: str) -> str:
    """Canonical ASCII orbit label: ``\\tilde{A}_{1}`` and ``Ã1`` both become ``~A1``."""
    s = label.replace("\u00c3", "~A").replace("\u2032", "'")
    for pat, rep in _LATEX:
        s = pat.sub(rep, s)
    if "\\" in s:
        warnings.warn(f"unrecognised markup left in orbit label {label!r}", stacklevel=2)
    return s


def char_restriction(label: str) -> tuple[int, ...] | None:
    """Primes in a trailing ``^(p)`` superscript."""
    m = re.search(r"\^\(([\d,]+)\)$", label)
    return tuple(int(x) for x in m.group(1).split(",")) if m else None


def _two_row(group: str) -> bool:
    return group[0] == "E"


def root_from_display(group: str, text: str) -> Root:
    """Parse ``"1 2 2 1 1 1;1"`` (E types) or ``"0 1 2 0"`` into Bourbaki order."""
    rank = int(group[1:])
    if _two_row(group):
        if text.count(";") != 1:
            raise CatalogueError(f"{group} roots need the form 'c1 c3 ... ;c2', got {text!r}")
        top, c2 = text.split(";")
        vals = [int(x) for x in top.split()]
        if len(vals) != rank - 1:
            raise CatalogueError(f"expected {rank - 1} top-row coefficients in {text!r}")
        c2v = int(c2.strip())
        return (vals[0], c2v, *vals[1:])
    if ";" in text:
        raise CatalogueError(f"{group} roots are a single row, got {text!r}")
    vals = tuple(int(x) for x in text.split())
    if len(vals) != rank:
        raise CatalogueError(f"expected {rank} coefficients in {text!r}")
    return vals


def root_to_display(group: str, root: Sequence[int]) -> str:
    if _two_row(group):
        return " ".join(str(root[i]) for i in [0] + list(range(2, len(root)))) + f";{root[1]}"
    return " ".join(map(str, root))


@dataclass(frozen=True)
class OrbitRep:
    group: str
    orbit_label: str
    terms: tuple[tuple[object, Root], ...]
    char_only: tuple[int, ...] | None = None

    @property
    def parameterized(self) -> bool:
        return any(c == T for c, _ in self.terms)

    def element(self, alg: ChevalleyAlgebra, t: int | None = None) -> Element:
        """Algebra element; ``t`` substitutes the parameter if present."""
        out: Element = {}
        for c, r in self.terms:
            if c == T:
                if t is None:
                    raise CatalogueError(f"{self.orbit_label}: parameter t needs a value")
                c = t
            k = alg.index(r)
            out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    def to_line(self) -> str:
        p = f" p={','.join(map(str, self.char_only))}" if self.char_only else ""
        terms = " + ".join(_prefix(c) + root_to_display(self.group, r) for c, r in self.terms)
        return f"orbit {self.orbit_label}{p} : {terms}"


def _prefix(c) -> str:
    if c == T:
        return "t* "
    return "" if c == 1 else f"{c}* "


_ORBIT_LINE = re.compile(r"^orbit\s+(\S+)(?:\s+p=([\d,]+))?\s*:\s*(.*)$")


def parse_reps_file(text: str, group: str, check_roots: bool = True) -> list[OrbitRep]:
    rs = root_system(group)
    reps: list[OrbitRep] = []
    seen: set[str] = set()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _ORBIT_LINE.match(line)
        if not m:
            raise ParseError("expected 'orbit <label> [p=...] : terms'", n, 1)
        label = normalize_label(m.group(1))
        if label in seen:
            raise ParseError(f"duplicate orbit label {label!r}", n)
        seen.add(label)
        primes = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else None
        body = m.group(3)
        col0 = raw.index(body) + 1 if body else len(raw)
        terms = []
        for chunk in body.split("+"):
            col = col0 + body.index(chunk)
            s = chunk.strip()
            coeff: object = 1
            if s.startswith("t*"):
                coeff, s = T, s[2:].strip()
            elif "*" in s:
                head, s = s.split("*", 1)
                try:
                    coeff = int(head)
                except ValueError:
                    raise ParseError(f"bad coefficient {head.strip()!r}", n, col) from None
                if coeff == 0:
                    raise ParseError("zero coefficient", n, col)
                s = s.strip()
            try:
                root = root_from_display(group, s)
            except (CatalogueError, ValueError) as err:
                raise ParseError(str(err), n, col) from None
            if check_roots and root not in rs.index_of:
                raise ParseError(f"{root_to_display(group, root)} is not a positive root of {group}", n, col)
            terms.append((coeff, root))
        if not terms:
            raise ParseError("no terms", n)
        reps.append(OrbitRep(group, label, tuple(terms), primes))
    return reps


def serialize_reps(reps: Iterable[OrbitRep], header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [r.to_line() for r in reps]
    return "\n".join(lines) + "\n"


def _reps_path(group: str) -> Path:
    return data_dir() / "reps" / f"{group}.reps"


def load_reps(group: str, path: str | os.PathLike | None = None) -> list[OrbitRep]:
    """Representatives from ``path``, else the shipped data file for ``group``."""
    p = Path(path) if path else _reps_path(group)
    if not p.exists():
        if group in FILE_GROUPS:
            raise CatalogueError(f"representatives file required for {group} (looked for {p})")
        raise CatalogueError(f"no representatives file at {p}")
    return parse_reps_file(p.read_text(encoding="utf-8"), group)


def builtin_reps(group: str) -> list[OrbitRep]:
    if group in FILE_GROUPS:
        return load_reps(group)
    if group not in BUILTIN_GROUPS:
        raise CatalogueError(f"no representatives for {group}")
    return _builtin(group)


@lru_cache(maxsize=None)
def _builtin(group: str) -> list[OrbitRep]:
    p = Path(__file__).with_name("data") / "reps" / f"{group}.reps"
    return parse_reps_file(p.read_text(encoding="utf-8"), group)


# --- expected tables ---

HEADER = ("group", "module", "orbit", "prime", "partition")


@dataclass(frozen=True)
class ExpectedRow:
    group: str
    module: str
    orbit: str
    prime: str
    partition: Partition


@dataclass
class ExpectedTable:
    rows: list[ExpectedRow] = field(default_factory=list)

    def orbits(self, group: str | None = None, module: str | None = None) -> list[str]:
        return list(dict.fromkeys(
            r.orbit for r in self.rows if (group is None or r.group == group) and (module is None or r.module == module)
        ))

    def reports(self) -> dict[tuple[str, str, str], JordanReport]:
        out: dict[tuple[str, str, str], JordanReport] = {}
        for r in self.rows:
            key = (r.group, r.module, r.orbit)
            rep = out.get(key)
            if rep is None:
                rep = out[key] = JordanReport(r.group, r.module, r.orbit, r.partition.size, None)
            if r.prime in ("all", "others"):
                rep.generic = r.partition
            else:
                rep.exceptional[int(r.prime)] = r.partition
        for rep in out.values():
            if rep.generic is None:
                rep.char_only = tuple(sorted(rep.exceptional))
        return out

    def __len__(self) -> int:
        return len(self.rows)


def _check_prime_spec(spec: str) -> str:
    if spec in ("all", "others"):
        return spec
    if spec.isdigit():
        from sympy import isprime

        if isprime(int(spec)):
            return spec
    raise CatalogueError(f"unknown prime spec {spec!r}")


def parse_expected_table(text: str) -> ExpectedTable:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    table = ExpectedTable()
    if not lines:
        return table
    if tuple(x.strip() for x in lines[0].split(",")) == HEADER:
        lines = lines[1:]
    generic_seen: set[tuple[str, str, str]] = set()
    prime_rows: dict[tuple[str, str, str, str], Partition] = {}
    for n, line in enumerate(lines, start=1):
        # the partition field itself contains commas: split off the first four
        parts = line.split(",", 4)
        if len(parts) != 5:
            raise ParseError(f"expected 5 fields: {line!r}", n)
        group, module, orbit, prime, part = (x.strip() for x in parts)
        if module not in ("minimal", "adjoint"):
            raise ParseError(f"unknown module {module!r}", n)
        try:
            prime = _check_prime_spec(prime)
            partition = Partition.parse(part)
        except (CatalogueError, PartitionError) as err:
            raise ParseError(str(err), n) from None
        orbit = normalize_label(orbit)
        if prime in ("all", "others"):
            key = (group, module, orbit)
            if key in generic_seen:
                raise ParseError(f"second all/others row for {orbit}", n)
            generic_seen.add(key)
        else:
            key = (group, module, orbit, prime)
            if key in prime_rows and prime_rows[key] != partition:
                raise ParseError(f"conflicting rows for {orbit} at p={prime}", n)
            prime_rows[key] = partition
        table.rows.append(ExpectedRow(group, module, orbit, prime, partition))
    return table


def serialize_expected_table(table: ExpectedTable, header: str | None = None) -> str:
    buf = io.StringIO()
    if header:
        for h in header.splitlines():
            buf.write(f"# {h}\n")
    buf.write(",".join(HEADER) + "\n")
    for r in table.rows:
        buf.write(f"{r.group},{r.module},{r.orbit},{r.prime},{r.partition}\n")
    return buf.getvalue()


def table_from_reports(reports: Iterable[JordanReport]) -> ExpectedTable:
    t = ExpectedTable()
    for rep in reports:
        for prime, part in rep.rows():
            t.rows.append(ExpectedRow(rep.group, rep.module_kind, rep.orbit_label, prime, part))
    return t


def expected_path(group: str, module: str) -> Path:
    return data_dir() / "expected" / f"{group}_{module}.csv"


def load_expected(group: str, module: str, path: str | os.PathLike | None = None) -> ExpectedTable:
    p = Path(path) if path else expected_path(group, module)
    if not p.exists():
        raise CatalogueError(f"no expected table at {p}")
    t = parse_expected_table(p.read_text(encoding="utf-8"))
    t.rows = [r for r in t.rows if r.group == group and r.module == module]
    return t
