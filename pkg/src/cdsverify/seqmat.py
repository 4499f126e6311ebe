"""Binary +/-1 sequences and circulant matrices.

Autocorrelations, Barker checks and exhaustive Barker search, circulant
Hadamard checks and search, the difference-set to sequence map, and the
Hadamard determinant bound.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .diffsets import DifferenceSet
from .errors import BudgetError, UsageError

DEFAULT_BARKER_WORK = 2**24
DEFAULT_HADAMARD_WORK = 2**21
MAX_DET_ORDER = 16
DIRECT_PRODUCT_MAX = 64


def as_sequence(s: Iterable[int]) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if not s:
        raise UsageError("sequence must be nonempty")
    if any(x not in (1, -1) for x in s):
        raise UsageError(f"entries must be +1 or -1: {s}")
    return s


def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse ``"1,1,-1"`` or ``"+,+,-"``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("1", "+1", "+"):
            out.append(1)
        elif tok in ("-1", "-"):
            out.append(-1)
        else:
            raise UsageError(f"bad sequence entry {tok!r}")
    return as_sequence(out)


def aperiodic_autocorrelation(s: Sequence[int], tau: int) -> int:
    s = as_sequence(s)
    v = len(s)
    if not 0 <= tau < v:
        raise UsageError(f"shift {tau} outside [0, {v - 1}]")
    return sum(s[i] * s[i + tau] for i in range(v - tau))


def periodic_autocorrelation(s: Sequence[int], tau: int) -> int:
    s = as_sequence(s)
    v = len(s)
    if not 0 <= tau < v:
        raise UsageError(f"shift {tau} outside [0, {v - 1}]")
    return sum(s[i] * s[(i + tau) % v] for i in range(v))


def aperiodic_profile(s: Sequence[int]) -> list[int]:
    s = as_sequence(s)
    return [aperiodic_autocorrelation(s, t) for t in range(len(s))]


def periodic_profile(s: Sequence[int]) -> list[int]:
    s = as_sequence(s)
    return [periodic_autocorrelation(s, t) for t in range(len(s))]


def is_barker(s: Sequence[int]) -> bool:
    s = as_sequence(s)
    return all(abs(aperiodic_autocorrelation(s, t)) <= 1 for t in range(1, len(s)))


# symmetries -----------------------------------------------------------------


def negate(s):
    return tuple(-x for x in s)


def reverse(s):
    return tuple(reversed(s))


def alternate(s):
    return tuple(x if i % 2 == 0 else -x for i, x in enumerate(s))


def barker_orbit(s: Sequence[int]) -> set[tuple[int, ...]]:
    """Images of s under the group generated by negation, reversal, alternation."""
    s = as_sequence(s)
    orbit = {s}
    frontier = [s]
    while frontier:
        t = frontier.pop()
        for g in (negate, reverse, alternate):
            img = g(t)
            if img not in orbit:
                orbit.add(img)
                frontier.append(img)
    return orbit


def canonical_barker(s: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically largest member of the symmetry orbit."""
    return max(barker_orbit(s))


# Barker search ----------------------------------------------------------------


def _barker_leaf_ok(s, v, checked_from):
    for tau in range(1, checked_from):
        c = 0
        for i in range(v - tau):
            c += s[i] * s[i + tau]
        if c > 1 or c < -1:
            return False
    return True


def _barker_branch(v, first, last):
    """All Barker sequences of length v with s[0] = first and s[v-1] = last.

    Entries are fixed in pairs from both ends; after k pairs the shift v-k
    only involves fixed entries, so its correlation is checked at once.
    """
    s = [0] * v
    s[0], s[v - 1] = first, last
    half = v // 2
    found = []

    def place(k):
        # k pairs fixed: s[0..k-1] and s[v-k..v-1]
        if k == half:
            if v % 2:
                for mid in (1, -1):
                    s[half] = mid
                    if _barker_leaf_ok(s, v, v - half):
                        found.append(tuple(s))
                s[half] = 0
            elif _barker_leaf_ok(s, v, v - half):
                found.append(tuple(s))
            return
        tau = v - k - 1
        for a in (1, -1):
            s[k] = a
            for b in (1, -1):
                s[v - k - 1] = b
                c = 0
                for i in range(k + 1):
                    c += s[i] * s[i + tau]
                if -1 <= c <= 1:
                    place(k + 1)
        s[k] = s[v - k - 1] = 0

    if v == 1:
        return [(first,)] if first == last else []
    if abs(first * last) <= 1:  # C(v-1) = s0 * s_{v-1}
        place(1)
    return found


def _barker_branch_job(args):
    return _barker_branch(*args)


def search_barker(
    v: int,
    canonicalize: bool = False,
    *,
    max_work: int = DEFAULT_BARKER_WORK,
    workers: int = 1,
) -> list[tuple[int, ...]]:
    """Every Barker sequence of length v, sorted in decreasing lexicographic order.

    With ``canonicalize``, one representative (the lexicographic maximum) per
    orbit under negation, reversal and alternation.
    """
    if not isinstance(v, int) or v < 1:
        raise UsageError(f"length must be a positive integer, got {v!r}")
    if 2**v > max_work:
        raise BudgetError(
            f"Barker search at length {v} covers 2^{v} sequences, budget is {max_work}",
            bound=max_work,
            requested=2**v,
        )
    jobs = [(v, a, b) for a in (1, -1) for b in (1, -1)]
    if workers > 1 and v > 12:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            parts = list(pool.map(_barker_branch_job, jobs))
    else:
        parts = [_barker_branch(*job) for job in jobs]
    found = {s for part in parts for s in part}
    if canonicalize:
        found = {canonical_barker(s) for s in found}
    return sorted(found, reverse=True)


# Barker sequences as printed in the source table, by length.
PRINTED_BARKER_TABLE = {
    2: (1, 1),
    3: (1, 1, -1),
    4: (1, 1, 1, -1),
    5: (1, 1, 1, -1, 1),
    7: (1, 1, 1, -1, -1, 1, -1),
    11: (1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1),
    13: (1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, 1),
}


def hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


def audit_barker_row(row: Sequence[int], found: Sequence[tuple[int, ...]]) -> dict:
    """Check a claimed Barker sequence against the exhaustive search results
    ``found`` for its length."""
    row = as_sequence(row)
    profile = aperiodic_profile(row)
    entry = {
        "length": len(row),
        "sequence": row,
        "aperiodic": profile,
        "is_barker": is_barker(row),
        "all_pm1": all(abs(c) == 1 for c in profile[1:]),
        "in_search_results": row in set(found),
        "nearest": None,
        "nearest_distance": None,
        "nearest_canonical": None,
    }
    if not entry["is_barker"] and found:
        nearest = min(found, key=lambda t: (hamming(t, row), [-x for x in t]))
        entry["nearest"] = nearest
        entry["nearest_distance"] = hamming(nearest, row)
        entry["nearest_canonical"] = canonical_barker(nearest)
    return entry


def barker_census(
    max_len: int, *, min_len: int = 1, max_work: int = DEFAULT_BARKER_WORK, workers: int = 1
) -> dict[int, list[tuple[int, ...]]]:
    """Length -> all Barker sequences, for every length in [min_len, max_len]."""
    return {
        v: search_barker(v, max_work=max_work, workers=workers)
        for v in range(min_len, max_len + 1)
    }


# difference sets and circulants -------------------------------------------------


def ds_to_sequence(D: DifferenceSet) -> tuple[int, ...]:
    """s_i = +1 if i in D else -1, for i = 0..v-1."""
    D.require_params()
    members = set(D.elements)
    return tuple(1 if i in members else -1 for i in range(D.v))


def circulant_matrix(row: Sequence[int]) -> np.ndarray:
    """A[i, j] = a[(j - i) mod n]; row i is row 0 shifted right by i."""
    row = np.asarray(as_sequence(row), dtype=np.int64)
    n = len(row)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def hadamard_by_product(row: Sequence[int]) -> bool:
    A = circulant_matrix(row)
    n = A.shape[0]
    return bool(np.array_equal(A @ A.T, n * np.eye(n, dtype=np.int64)))


def hadamard_by_autocorrelation(row: Sequence[int]) -> bool:
    row = as_sequence(row)
    return all(periodic_autocorrelation(row, t) == 0 for t in range(1, len(row)))


def is_circulant_hadamard(row: Sequence[int]) -> bool:
    """HH^T = nI, checked through periodic autocorrelation and, for small
    orders, the explicit matrix product as well."""
    row = as_sequence(row)
    by_corr = hadamard_by_autocorrelation(row)
    if len(row) <= DIRECT_PRODUCT_MAX:
        by_product = hadamard_by_product(row)
        if by_product != by_corr:
            raise RuntimeError(f"matrix and autocorrelation checks disagree on {row}")
    return by_corr


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def _masks_to_rows(masks, n):
    rows = []
    for m in masks.tolist():
        rows.append(tuple(-1 if (m >> i) & 1 else 1 for i in range(n)))
    return rows


def all_rows(n: int) -> list[tuple[int, ...]]:
    """Every +/-1 row of length n, in mask order."""
    return _masks_to_rows(np.arange(1 << n, dtype=np.uint64), n)


def circulant_hadamard_rows(n: int) -> list[tuple[int, ...]]:
    """All first rows of order n whose circulant is Hadamard.

    Rows are bit masks (bit i set means a_i = -1); the candidate set is
    filtered shift by shift on R(tau) = n - 2 * popcount(m ^ rot(m, tau)) = 0.
    Since R(tau) = R(n - tau), shifts up to n // 2 suffice.
    """
    if n == 1:
        return [(1,), (-1,)]
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.uint64)
    nn = np.uint64(n)
    for tau in range(1, n // 2 + 1):
        t = np.uint64(tau)
        rot = ((masks >> t) | (masks << (nn - t))) & np.uint64(full)
        masks = masks[_popcount(masks ^ rot).astype(np.int64) * 2 == n]
        if masks.size == 0:
            return []
    return sorted(_masks_to_rows(masks, n), reverse=True)


def rotate(row, k):
    k %= len(row)
    return tuple(row[k:] + row[:k])


def hadamard_orbit(row: Sequence[int]) -> set[tuple[int, ...]]:
    row = as_sequence(row)
    return {r for k in range(len(row)) for r in (rotate(row, k), negate(rotate(row, k)))}


def canonical_circulant(row: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically largest row under rotation and negation."""
    return max(hadamard_orbit(row))


def search_circulant_hadamard(
    n_max: int,
    *,
    reduce: bool = False,
    max_work: int = DEFAULT_HADAMARD_WORK,
    workers: int = 1,
) -> dict[int, list[tuple[int, ...]]]:
    """Order -> circulant Hadamard first rows, for every order 1..n_max."""
    if n_max < 1:
        raise UsageError("n_max must be at least 1")
    work = sum(2**n for n in range(1, n_max + 1))
    if work > max_work:
        raise BudgetError(
            f"circulant search to order {n_max} covers {work} rows, budget is {max_work}",
            bound=max_work,
            requested=work,
        )
    orders = list(range(1, n_max + 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = dict(zip(orders, pool.map(circulant_hadamard_rows, orders)))
    else:
        found = {n: circulant_hadamard_rows(n) for n in orders}
    if reduce:
        found = {n: sorted({canonical_circulant(r) for r in rows}, reverse=True)
                 for n, rows in found.items()}
    return found


# determinants ---------------------------------------------------------------------


def bareiss_determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    A = [[int(x) for x in r] for r in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise UsageError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def determinant_bound_check(row: Sequence[int]) -> dict:
    """|det| of the circulant against the Hadamard bound n^(n/2).

    Compared via squares so odd n stays exact.  The row-norm product with
    squared norms (n^n) is reported alongside.
    """
    row = as_sequence(row)
    n = len(row)
    if n > MAX_DET_ORDER:
        raise BudgetError(
            f"exact determinant limited to order {MAX_DET_ORDER}, got {n}",
            bound=MAX_DET_ORDER,
            requested=n,
        )
    det = abs(bareiss_determinant(circulant_matrix(row).tolist()))
    bound_sq = n**n
    root = isqrt(bound_sq)
    return {
        "order": n,
        "abs_det": det,
        "hadamard_bound_squared": bound_sq,
        "hadamard_bound": root if root * root == bound_sq else f"{n}^({n}/2)",
        "equality": det * det == bound_sq,
        "within_bound": det * det <= bound_sq,
        "squared_norm_bound": n**n,
    }
