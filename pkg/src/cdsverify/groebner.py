"""Buchberger's algorithm over Q, normal forms, and ideal membership."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UsageError
from .polyalg import LEX, MonomialOrder, MultiPoly

MAX_PAIR_REDUCTIONS = 10**6


class GroebnerError(RuntimeError):
    """Buchberger exceeded its pair-reduction cap (an implementation guard)."""


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[MultiPoly, ...]
    order: MonomialOrder
    reduced: bool = False

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def variables(self):
        return self.generators[0].variables if self.generators else ()

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.generators]

    def univariate(self, name: str) -> list[MultiPoly]:
        """Basis elements involving only ``name``."""
        return [g for g in self.generators if g.support() <= {name} and g.support()]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce_terms(terms: dict, reducers, key) -> dict:
    """Full reduction of a term dict by [(lm, lc, terms), ...]; returns the remainder."""
    p = dict(terms)
    r = {}
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for glm, glc, gterms in reducers:
            if _divides(glm, lm):
                q = tuple(x - y for x, y in zip(lm, glm))
                f = c / glc
                for e, gc in gterms.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    val = p.get(e2, 0) - f * gc
                    if val:
                        p[e2] = val
                    else:
                        p.pop(e2, None)
                break
        else:
            r[lm] = c
            del p[lm]
    return r


def _reducers(polys, order):
    return [(*g.leading_term(order), dict(g.terms)) for g in polys if g]


def _check_vars(polys):
    polys = list(polys)
    if polys:
        v = polys[0].variables
        for p in polys[1:]:
            if p.variables != v:
                raise UsageError(f"variable lists differ: {v} vs {p.variables}")
    return polys


def s_polynomial(a: MultiPoly, b: MultiPoly, order: MonomialOrder = LEX) -> MultiPoly:
    """(L/lt(a))*a - (L/lt(b))*b with L the lcm of the leading monomials."""
    if not a or not b:
        raise UsageError("S-polynomial of the zero polynomial is undefined")
    _check_vars([a, b])
    la, ca = a.leading_term(order)
    lb, cb = b.leading_term(order)
    lcm = _lcm(la, lb)
    left = a.mul_term(tuple(x - y for x, y in zip(lcm, la)), 1 / ca)
    right = b.mul_term(tuple(x - y for x, y in zip(lcm, lb)), 1 / cb)
    return left - right


def normal_form(p: MultiPoly, basis, order: MonomialOrder | None = None) -> MultiPoly:
    """Remainder of ``p`` on full division by ``basis``.

    ``basis`` is an :class:`IdealBasis` or a plain sequence of polynomials (then
    ``order`` is required).  No term of the result is divisible by a leading
    monomial of the basis.
    """
    if isinstance(basis, IdealBasis):
        order = basis.order if order is None else order
        polys = basis.generators
    else:
        polys = list(basis)
        if order is None:
            raise UsageError("normal_form needs a monomial order")
    polys = _check_vars([p, *polys])[1:]
    if not p:
        return p
    key = order.key(p.variables)
    r = _reduce_terms(dict(p.terms), _reducers(polys, order), key)
    return MultiPoly._raw(p.variables, r)


def _select_key(pair, lms, key):
    i, j = pair
    return (key(_lcm(lms[i], lms[j])), -j, -i)


def buchberger(
    generators: Sequence[MultiPoly],
    order: MonomialOrder = LEX,
    *,
    max_reductions: int = MAX_PAIR_REDUCTIONS,
) -> IdealBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Uses normal pair selection (smallest lcm first) and skips pairs with
    coprime leading monomials.  The result is monic and sorted by decreasing
    leading monomial, hence deterministic.
    """
    polys = [g for g in _check_vars(generators) if g]
    if not polys:
        return IdealBasis((), order, reduced=True)
    variables = polys[0].variables
    key = order.key(variables)

    G = []
    lms = []
    for g in polys:
        g = g.monic(order)
        lms.append(g.leading_monomial(order))
        G.append(g)
    reducers = _reducers(G, order)
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}

    done = 0
    while pairs:
        pair = min(pairs, key=lambda pr: _select_key(pr, lms, key))
        pairs.remove(pair)
        i, j = pair
        lcm = _lcm(lms[i], lms[j])
        if lcm == tuple(x + y for x, y in zip(lms[i], lms[j])):
            continue
        done += 1
        if done > max_reductions:
            raise GroebnerError(
                f"Buchberger exceeded {max_reductions} pair reductions"
            )
        s = s_polynomial(G[i], G[j], order)
        r = _reduce_terms(dict(s.terms), reducers, key)
        if not r:
            continue
        h = MultiPoly._raw(variables, r).monic(order)
        G.append(h)
        lm = h.leading_monomial(order)
        lms.append(lm)
        reducers.append((lm, Fraction(1), dict(h.terms)))
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))
        if not any(lm):
            # unit ideal
            return IdealBasis((MultiPoly.constant(1, variables),), order, reduced=True)

    return IdealBasis(tuple(_interreduce(G, order)), order, reduced=True)


def _interreduce(G, order):
    key = order.key(G[0].variables)
    # minimal basis: drop elements whose leading monomial is divisible by another's
    G = sorted(G, key=lambda g: key(g.leading_monomial(order)))
    minimal = []
    for g in G:
        lm = g.leading_monomial(order)
        if not any(_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce_terms(dict(g.terms), _reducers(others, order), key)
        out.append(MultiPoly._raw(g.variables, r).monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def is_groebner_basis(basis: IdealBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = basis.generators
    for j in range(len(G)):
        for i in range(j):
            if normal_form(s_polynomial(G[i], G[j], basis.order), basis):
                return False
    return True


def is_reduced(basis: IdealBasis) -> bool:
    """Monic, and no term of any element divisible by another element's leading monomial."""
    order = basis.order
    lms = basis.leading_monomials()
    for idx, g in enumerate(basis.generators):
        if g.leading_coefficient(order) != 1:
            return False
        for k, lm in enumerate(lms):
            if k != idx and any(_divides(lm, e) for e in g.terms):
                return False
    return True


def ideal_member(
    p: MultiPoly, generators: Sequence[MultiPoly], order: MonomialOrder = LEX
) -> bool:
    """True iff ``p`` lies in the ideal generated by ``generators``."""
    basis = buchberger(generators, order)
    if not basis.generators:
        return not p
    return not normal_form(p, basis)
