"""Cyclic difference sets in Z_v: certification, complements, residue counts,
generating functions, and the mod X^w - 1 congruence checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UsageError
from .groebner import normal_form
from .polyalg import LEX, MultiPoly

THETA_VARIABLES = ("X",)

# The six nontrivial sets listed alongside the Barker sequences, with the
# parameters printed for them.
LISTED_SETS = (
    (3, (0, 1), (3, 2, 1, 1)),
    (4, (0, 1, 2), (4, 3, 2, 1)),
    (5, (0, 1, 2, 4), (5, 4, 3, 1)),
    (7, (0, 1, 2, 5), (7, 4, 2, 2)),
    (11, (0, 1, 2, 6, 9), (11, 5, 2, 3)),
    (13, (0, 1, 2, 3, 4, 7, 8, 10, 12), (13, 9, 6, 3)),
)


@dataclass(frozen=True)
class DSParams:
    v: int
    k: int
    lam: int
    n: int

    def __post_init__(self):
        if min(self.v, self.k, self.lam, self.n) < 0:
            raise UsageError(f"negative parameter in {self.as_tuple()}")
        if self.n != self.k - self.lam:
            raise UsageError(f"n != k - lambda in {self.as_tuple()}")
        if self.k > self.v:
            raise UsageError(f"k > v in {self.as_tuple()}")
        if self.k * (self.k - 1) != self.lam * (self.v - 1):
            raise UsageError(f"k(k-1) != lambda(v-1) in {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.n)

    def complement(self) -> DSParams:
        return DSParams(self.v, self.v - self.k, self.v - 2 * self.k + self.lam, self.n)


@dataclass(frozen=True)
class ResidueCounts:
    w: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.counts) != self.w:
            raise UsageError(f"expected {self.w} counts, got {len(self.counts)}")

    def __iter__(self):
        return iter(self.counts)


@dataclass(frozen=True)
class DifferenceSet:
    """A residue subset of Z_v.  ``params`` is set only for certified sets."""

    v: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.v, int) or self.v < 1:
            raise UsageError(f"modulus must be a positive integer, got {self.v!r}")
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise UsageError(f"duplicate elements in {elems}")
        bad = [d for d in elems if not 0 <= d < self.v]
        if bad:
            raise UsageError(f"elements {bad} not reduced modulo {self.v}")
        object.__setattr__(self, "elements", tuple(sorted(elems)))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def params(self) -> DSParams | None:
        return verify_difference_set(self.v, self.elements)

    def require_params(self) -> DSParams:
        p = self.params
        if p is None:
            raise UsageError(f"{self.elements} is not a difference set in Z_{self.v}")
        return p


def difference_counts(v: int, elements: Iterable[int]) -> list[int]:
    """counts[d] = number of ordered pairs (a, b) in D with a - b = d (mod v)."""
    elements = list(elements)
    counts = [0] * v
    for a in elements:
        for b in elements:
            counts[(a - b) % v] += 1
    return counts


def verify_difference_set(v: int, elements: Iterable[int]) -> DSParams | None:
    """Parameters (v, k, lambda, n) if every nonzero residue has the same
    number of representations as a difference, else None.

    Z_1 has no nonzero residues; lambda is taken as 0 there.
    """
    D = DifferenceSet(v, tuple(elements))
    counts = difference_counts(v, D.elements)
    nonzero = set(counts[1:])
    if len(nonzero) > 1:
        return None
    lam = nonzero.pop() if nonzero else 0
    return DSParams(v, D.k, lam, D.k - lam)


def complement(D: DifferenceSet) -> DifferenceSet:
    D.require_params()
    members = set(D.elements)
    return DifferenceSet(D.v, tuple(i for i in range(D.v) if i not in members))


def _check_divisor(v, w):
    if not isinstance(w, int) or w < 1 or v % w:
        raise UsageError(f"w = {w} does not divide v = {v}")


def divisors(v: int) -> list[int]:
    return [w for w in range(1, v + 1) if v % w == 0]


def residue_counts(D: DifferenceSet, w: int) -> ResidueCounts:
    _check_divisor(D.v, w)
    counts = [0] * w
    for d in D.elements:
        counts[d % w] += 1
    return ResidueCounts(w, counts)


def _univariate(coeffs: dict[int, int]) -> MultiPoly:
    return MultiPoly(THETA_VARIABLES, {(e,): c for e, c in coeffs.items()})


def theta(D: DifferenceSet) -> MultiPoly:
    """Generating polynomial sum_{d in D} X^d."""
    return _univariate({d: 1 for d in D.elements})


def theta_mod(D: DifferenceSet, w: int) -> MultiPoly:
    """theta(X) reduced modulo X^w - 1, by polynomial division."""
    _check_divisor(D.v, w)
    modulus = _univariate({w: 1, 0: -1})
    return normal_form(theta(D), [modulus], LEX)


def _reduce_exponents(p: MultiPoly, w: int, negate: bool = False) -> MultiPoly:
    out = Counter()
    for (e,), c in p.terms.items():
        out[(-e if negate else e) % w] += c
    return _univariate(out)


def lemma5_sides(D: DifferenceSet, w: int) -> tuple[MultiPoly, MultiPoly]:
    """Both sides of theta(X) theta(X^-1) = n + (lambda v / w)(1 + ... + X^(w-1)) mod X^w - 1.

    X^-1 acts on the reduced generating function by sending exponent e to -e mod w.
    """
    p = D.require_params()
    _check_divisor(D.v, w)
    reduced = theta_mod(D, w)
    product = reduced * _reduce_exponents(reduced, w, negate=True)
    lhs = _reduce_exponents(product, w)
    scale = Fraction(p.lam * p.v, w)
    rhs = _univariate({j: scale for j in range(w)}) + p.n
    return lhs, rhs


def check_lemma5(D: DifferenceSet, w: int) -> bool:
    lhs, rhs = lemma5_sides(D, w)
    return lhs == rhs


def lemma6_equations(params: DSParams, w: int, x: Sequence[int]) -> list[tuple[str, int, Fraction]]:
    """(label, left side, right side) for each of the w + 1 equations."""
    x = list(x)
    if len(x) != w:
        raise UsageError(f"expected {w} residue counts, got {len(x)}")
    _check_divisor(params.v, w)
    cross = Fraction(params.lam * params.v, w)
    rows = [
        ("sum", sum(x), Fraction(params.k)),
        ("sum of squares", sum(t * t for t in x), params.n + cross),
    ]
    for j in range(1, w):
        rows.append((f"shift {j}", sum(x[i] * x[(i - j) % w] for i in range(w)), cross))
    return rows


def check_lemma6(params: DSParams, w: int, x: Sequence[int]) -> bool:
    return all(lhs == rhs for _, lhs, rhs in lemma6_equations(params, w, x))


def lemma6_bounds(params: DSParams, w: int, x: Sequence[int]) -> dict[str, bool]:
    """Whether 0 <= x_i <= v/w (inclusive) and 0 <= x_i < v/w (strict) hold."""
    top = Fraction(params.v, w)
    return {
        "inclusive": all(0 <= t <= top for t in x),
        "strict": all(0 <= t < top for t in x),
    }
