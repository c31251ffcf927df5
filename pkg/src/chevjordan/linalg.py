"""Exact linear algebra over Z, Q, F_p and the function fields Q(t), F_p(t).

Integer matrices are handled as 2-d numpy object arrays (arbitrary
precision Python ints) or as anything ``np.asarray`` turns into one.
Internally elimination runs on sparse row dictionaries: matrices of
nilpotent elements in a Chevalley basis are very sparse and unit pivots
keep fill-in low.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime, primefactors

SparseRows = dict[int, dict[int, int]]


def as_int_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=object)
    if a.ndim != 2:
        if a.size == 0:
            return np.zeros((0, 0), dtype=object)
        raise ValueError("expected a 2-d matrix")
    return a


def to_sparse(m) -> tuple[SparseRows, int]:
    if isinstance(m, tuple) and len(m) == 2 and isinstance(m[0], dict):
        rows, ncols = m
        return {r: dict(v) for r, v in rows.items() if v}, ncols
    a = as_int_matrix(m)
    rows: SparseRows = {}
    for i in range(a.shape[0]):
        row = {j: int(v) for j, v in enumerate(a[i]) if v}
        if row:
            rows[i] = row
    return rows, a.shape[1]


def _eliminate(rows: SparseRows, ncols: int, mod: int | None = None) -> list[int]:
    """Reduce to diagonal form in place; returns the nonzero pivots.

    With ``mod=None`` only unimodular row and column operations are used,
    so the multiset of prime-power parts of the pivots equals that of the
    elementary divisors. With a prime ``mod`` the work is over F_p and the
    number of pivots is the rank.
    """
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        if mod is not None:
            for c in list(row):
                row[c] %= mod
                if not row[c]:
                    del row[c]
        for c in row:
            cols.setdefault(c, set()).add(r)
    rows = {r: row for r, row in rows.items() if row}
    pivots: list[int] = []

    def axpy(dst: int, src_row: dict[int, int], f: int):
        # rows[dst] -= f * src_row, keeping the column index in sync
        d = rows[dst]
        for c, v in src_row.items():
            nv = d.get(c, 0) - f * v
            if mod is not None:
                nv %= mod
            if nv:
                if c not in d:
                    cols[c].add(dst)
                d[c] = nv
            elif c in d:
                del d[c]
                cols[c].discard(dst)

    def drop(r: int, c: int):
        for cc in rows.pop(r):
            if cc != c:
                cols[cc].discard(r)
        for rr in cols.pop(c):
            if rr != r:
                rows[rr].pop(c, None)

    while True:
        for c in [c for c, s in cols.items() if not s]:
            del cols[c]
        if not cols:
            break
        best = None
        for c, rs in cols.items():
            lc = len(rs)
            for r in rs:
                v = rows[r][c]
                av = 1 if mod is not None else abs(v)
                key = (av, (len(rows[r]) - 1) * (lc - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
                    if key == (1, 0):
                        break
            if best is not None and best[0] == (1, 0):
                break
        _, pr, pc = best
        prow = rows[pr]
        pv = prow[pc]
        if mod is not None or abs(pv) == 1:
            inv = pow(pv, -1, mod) if mod is not None else pv
            for r in list(cols[pc]):
                if r == pr:
                    continue
                f = rows[r][pc] * inv
                if mod is not None:
                    f %= mod
                axpy(r, prow, f)
            pivots.append(pv if mod is not None else 1)
            drop(pr, pc)
            continue
        clean = True
        for r in list(cols[pc]):
            if r == pr:
                continue
            q = rows[r][pc] // pv
            if q:
                axpy(r, prow, q)
            if pc in rows[r]:
                clean = False
        if not clean:
            continue
        # column pc is now pivot-only, so column ops touch only the pivot row
        for c in list(prow):
            if c == pc:
                continue
            v = prow[c] - (prow[c] // pv) * pv
            if v:
                prow[c] = v
                clean = False
            else:
                del prow[c]
                cols[c].discard(pr)
        if clean:
            pivots.append(abs(pv))
            drop(pr, pc)
    return pivots


def diagonal_form(m) -> list[int]:
    """Nonzero diagonal entries of an equivalent diagonal matrix over Z."""
    rows, ncols = to_sparse(m)
    return _eliminate(rows, ncols)


def normalize_divisors(diag: Iterable[int], length: int) -> list[int]:
    """Turn the diagonal of a diagonal matrix into its Smith invariants."""
    d = sorted(abs(x) for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d + [0] * (length - len(d))


def smith_normal_form(m) -> list[int]:
    """Elementary divisors ``d_1 | d_2 | ...`` padded with zeros to ``min(rows, cols)``."""
    a = as_int_matrix(m)
    return normalize_divisors(diagonal_form(a), min(a.shape))


def _check_prime(p: int):
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise ValueError(f"{p!r} is not a prime")


def rank_mod_p(m, p: int) -> int:
    _check_prime(p)
    rows, ncols = to_sparse(m)
    return len(_eliminate(rows, ncols, mod=int(p)))


def bareiss_rank(a: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Fraction-free row reduction; returns ``(rank, last pivot)``.

    The last pivot is (up to sign) a nonzero ``rank x rank`` minor.
    """
    m = [list(map(int, row)) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            x = row[c]
            if x:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pv - x * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = row[j] * pv // prev
            row[c] = 0
        prev = pv
        r += 1
        if r == nrows:
            break
    return r, (prev if r else 0)


def rank_over_Q(m) -> int:
    a = as_int_matrix(m)
    if a.size == 0:
        return 0
    # drop all-zero rows and columns first; Bareiss is cubic in what is left
    keep_r = [i for i in range(a.shape[0]) if any(a[i])]
    keep_c = [j for j in range(a.shape[1]) if any(a[:, j])]
    if not keep_r:
        return 0
    return bareiss_rank(a[np.ix_(keep_r, keep_c)].tolist())[0]


def primes_of(values: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for v in set(abs(int(x)) for x in values):
        if v > 1:
            out.update(primefactors(v))
    return out


def exceptional_primes(m) -> set[int]:
    """Primes at which the rank drops below the rank over Q."""
    return primes_of(diagonal_form(m))


# --- univariate integer polynomials, coefficient tuples low -> high ---

Poly = tuple[int, ...]


def poly(*coeffs: int, mod: int | None = None) -> Poly:
    c = [x % mod for x in coeffs] if mod else list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    n = max(len(a), len(b))
    return poly(*((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)), mod=mod)


def pneg(a: Poly, mod: int | None = None) -> Poly:
    return poly(*(-x for x in a), mod=mod)


def psub(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    return padd(a, pneg(b), mod=mod)


def pmul(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(*out, mod=mod)


def pdiv_exact(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    """``a / b`` when ``b`` divides ``a`` exactly (over Z or F_p)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead = b[-1]
    inv = pow(lead, -1, mod) if mod else None
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        x = a[k + len(b) - 1]
        if mod:
            f = (x * inv) % mod
        else:
            if x % lead:
                raise ArithmeticError("inexact polynomial division")
            f = x // lead
        q[k] = f
        if f:
            for i, y in enumerate(b):
                a[k + i] -= f * y
                if mod:
                    a[k + i] %= mod
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return poly(*q, mod=mod)


def content(a: Poly) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def poly_bareiss_rank(m: Sequence[Sequence[Poly]], mod: int | None = None) -> tuple[int, Poly]:
    """Fraction-free rank over Q(t) (``mod=None``) or F_p(t)."""
    a = [[poly(*x, mod=mod) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r, prev = 0, (1,)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            x = row[c]
            for j in range(c + 1, ncols):
                num = psub(pmul(row[j], pv, mod), pmul(x, pr[j], mod), mod)
                row[j] = pdiv_exact(num, prev, mod) if num else ()
            row[c] = ()
        prev = pv
        r += 1
        if r == nrows:
            break
    return r, (prev if r else ())


def rank_over_function_field(m: Sequence[Sequence[Poly]], p: int = 0) -> int:
    """Rank over Q(t) for ``p == 0``, otherwise over F_p(t)."""
    if p:
        _check_prime(p)
    return poly_bareiss_rank(m, mod=p or None)[0]


def function_field_candidate_primes(m: Sequence[Sequence[Poly]]) -> set[int]:
    """Primes where the F_p(t)-rank may drop: divisors of a maximal minor's content."""
    r, minor = poly_bareiss_rank(m)
    if not r:
        return set()
    return primes_of([content(minor)])


def mat_pow_sequence(m: np.ndarray, limit: int | None = None):
    """Yield ``m, m^2, ...`` until the zero matrix (inclusive) or ``limit`` terms."""
    a = as_int_matrix(m)
    cur = a
    k = 1
    while True:
        yield cur
        if not cur.any() or (limit is not None and k >= limit):
            return
        cur = sparse_matmul(cur, a)
        k += 1


def sparse_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of object matrices, skipping zero entries of ``a``."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
    brows = [(k, b[k]) for k in range(b.shape[0]) if b[k].any()]
    bset = {k for k, _ in brows}
    for i in range(a.shape[0]):
        acc = None
        for k in np.flatnonzero(a[i]):
            if k not in bset:
                continue
            term = a[i, k] * b[k]
            acc = term if acc is None else acc + term
        if acc is not None:
            out[i] = acc
    return out
