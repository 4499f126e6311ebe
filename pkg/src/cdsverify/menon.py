"""Menon parameters (4u^2, 2u^2 -/+ u, u^2 -/+ u, u^2) with w = 4.

Builds the nine residue-count polynomials in x0..x3, u, reproduces their
derivation over Q(zeta_8), enumerates bounded integer solutions, and runs the
Groebner membership pipeline for u^4 - u^3.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffsets import DSParams
from .errors import BudgetError, UsageError
from .groebner import buchberger, ideal_member, normal_form
from .polyalg import (
    GREVLEX,
    LEX,
    MENON_VARIABLES,
    CyclotomicElement,
    MonomialOrder,
    MultiPoly,
    parse_poly,
)

CANONICAL_ORDER = MonomialOrder("lex", MENON_VARIABLES)

# (name, source, text) with the polynomials written as printed.
PRINTED = (
    ("f0", "eq6", "x0 + x1 + x2 + x3 - 2*u^2 + u"),
    ("f1", "eq6", "x0^2 + x1^2 + x2^2 + x3^2 - u^2 - u^2*(u^2 - u)"),
    ("f2", "eq6", "x0*x3 + x1*x0 + x2*x1 + x3*x2 - u^2*(u^2 - u)"),
    ("f3", "eq6", "x0*x2 + x1*x3 + x2*x0 + x3*x1 - u^2*(u^2 - u)"),
    ("f4", "eq6", "x0*x1 + x1*x2 + x2*x3 + x3*x0 - u^2*(u^2 - u)"),
    ("f5", "eq7", "x0*x1 + x1*x2 + x2*x3 - x3*x0 - u^2*(u^2 - u)"),
    ("f6", "eq7", "x0*x2 + x1*x3 - x2*x0 - x3*x1 - u^2*(u^2 - u)"),
    ("f7", "eq7", "x0*x3 - x1*x0 - x2*x1 - x3*x2 - u^2*(u^2 - u)"),
    ("f8", "eq7", "x0^2 + x1^2 + x2^2 + x3^2 - u^2 - u^2*(u^2 - u)"),
)

# Lemma-7 coordinate polynomials (before subtracting the right side) as printed.
PRINTED_LEMMA7 = (
    ("1", "f8", "x0^2 + x1^2 + x2^2 + x3^2"),
    ("zeta", "f5", "x0*x1 + x1*x2 + x2*x3 - x3*x0"),
    ("zeta^2", "f6", "x0*x2 + x1*x3 - x2*x0 - x3*x1"),
    ("zeta^3", "f7", "x0*x3 - x1*x0 - x2*x1 - x3*x2"),
)

CLAIMED_G0 = "u^4 - u^3"
DEFAULT_MAX_WORK = 10**7


@dataclass(frozen=True)
class MenonSystem:
    polys: dict
    provenance: dict

    def __getitem__(self, name: str) -> MultiPoly:
        return self.polys[name]

    def names(self) -> list[str]:
        return list(self.polys)

    def select(self, names: Sequence[str]) -> list[MultiPoly]:
        return [self.polys[n] for n in names]

    @property
    def ideal_generators(self) -> list[MultiPoly]:
        """f0..f7, the generators of the ideal in the Groebner claim."""
        return self.select([f"f{i}" for i in range(8)])


def build_menon_system() -> MenonSystem:
    polys = {}
    provenance = {}
    for name, source, text in PRINTED:
        polys[name] = parse_poly(text, MENON_VARIABLES)
        provenance[name] = source
    return MenonSystem(polys, provenance)


def menon_params(u: int, sign: str = "-") -> DSParams:
    if u < 0:
        raise UsageError("u must be nonnegative")
    if sign not in ("+", "-"):
        raise UsageError(f"sign must be '+' or '-', got {sign!r}")
    s = 1 if sign == "+" else -1
    return DSParams(4 * u * u, 2 * u * u + s * u, u * u + s * u, u * u)


# Lemma 7 ------------------------------------------------------------------


def _theta4(sign: int) -> CyclotomicElement:
    xs = [MultiPoly.var(f"x{i}") for i in range(4)]
    return CyclotomicElement.from_powers(xs, sign)


def derive_lemma7_coefficients() -> tuple[MultiPoly, ...]:
    """Coordinates of theta4(zeta) * theta4(zeta^-1) on 1, zeta, zeta^2, zeta^3."""
    return (_theta4(1) * _theta4(-1)).coeffs


def lemma7_right_side() -> CyclotomicElement:
    """n + (lambda v / w)(1 + zeta + zeta^2 + zeta^3) with n = u^2, lambda v / w = u^2(u^2 - u)."""
    u = MultiPoly.var("u")
    n = u**2
    cross = u**2 * (u**2 - u)
    return CyclotomicElement((n + cross, cross, cross, cross))


def lemma7_comparison() -> list[dict]:
    """Per coordinate: derived polynomial, printed polynomial, and the f_i match."""
    system = build_menon_system()
    derived = derive_lemma7_coefficients()
    rhs = lemma7_right_side().coeffs
    rows = []
    for (coord, fname, text), got, r in zip(PRINTED_LEMMA7, derived, rhs):
        printed = parse_poly(text)
        rows.append(
            {
                "coordinate": coord,
                "derived": got,
                "printed": printed,
                "printed_text": text,
                "matches_printed": got == printed,
                "matches_system": got - r == system[fname],
                "system_poly": fname,
                "identically_zero": printed.is_zero(),
            }
        )
    return rows


# integer solutions ----------------------------------------------------------


def enumeration_work(u_min: int, u_max: int) -> int:
    return sum((u * u + 1) ** 4 for u in range(u_min, u_max + 1))


def _int_terms(p: MultiPoly):
    terms = []
    for exp, c in p.terms.items():
        if c.denominator != 1:
            raise UsageError("integer enumeration needs integer coefficients")
        terms.append((int(c), exp))
    return terms


def _eval(terms, point):
    total = 0
    for c, exp in terms:
        t = c
        for x, e in zip(point, exp):
            if e:
                t *= x**e
        total += t
    return total


def _solutions_for_u(u: int, polys: Sequence[MultiPoly], x0_values=None):
    reduced = [_int_terms(p.substitute({"u": u})) for p in polys]
    top = u * u
    found = []
    rng = range(top + 1)
    heads = rng if x0_values is None else x0_values
    for x0 in heads:
        for rest in itertools.product(rng, repeat=3):
            point = (x0, *rest)
            if all(_eval(t, point) == 0 for t in reduced):
                found.append((*point, u))
    return found


def _worker(args):
    u, texts, x0_values = args
    polys = [parse_poly(t) for t in texts]
    return _solutions_for_u(u, polys, x0_values)


def enumerate_solutions(
    u_min: int,
    u_max: int,
    *,
    equations: Sequence[str] | None = None,
    max_work: int = DEFAULT_MAX_WORK,
    workers: int = 1,
) -> list[tuple[int, int, int, int, int]]:
    """All integer points with 0 <= x_i <= u^2 and u_min <= u <= u_max on which
    every chosen polynomial (default f0..f8) vanishes, sorted."""
    if not 0 <= u_min <= u_max:
        raise UsageError(f"need 0 <= u_min <= u_max, got {u_min}, {u_max}")
    work = enumeration_work(u_min, u_max)
    if work > max_work:
        raise BudgetError(
            f"enumerating u in [{u_min}, {u_max}] needs {work} evaluations, "
            f"budget is {max_work}",
            bound=max_work,
            requested=work,
        )
    system = build_menon_system()
    names = list(equations) if equations is not None else system.names()
    unknown = [n for n in names if n not in system.polys]
    if unknown:
        raise UsageError(f"unknown equations {unknown}")
    polys = system.select(names)
    found = []
    if workers <= 1:
        for u in range(u_min, u_max + 1):
            found.extend(_solutions_for_u(u, polys))
    else:
        texts = [str(p) for p in polys]
        jobs = []
        for u in range(u_min, u_max + 1):
            values = list(range(u * u + 1))
            for k in range(workers):
                chunk = values[k::workers]
                if chunk:
                    jobs.append((u, texts, chunk))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, jobs):
                found.extend(part)
    return sorted(found)


# Groebner claim ---------------------------------------------------------------


def integer_roots(p: MultiPoly) -> list[int]:
    """Integer roots of a univariate polynomial (any variable list)."""
    used = p.support()
    if len(used) > 1:
        raise UsageError("integer_roots needs a univariate polynomial")
    if p.is_zero():
        raise UsageError("every integer is a root of 0")
    if not used:
        return []
    (name,) = used
    i = p.variables.index(name)
    coeffs = {e[i]: c for e, c in p.terms.items()}
    low = min(coeffs)
    roots = [0] if low > 0 else []
    c = abs(coeffs[low] * _lcm_denominators(coeffs.values()))
    candidates = set()
    for d in range(1, int(c) + 1):
        if c % d == 0:
            candidates.update((d, -d))
    for r in sorted(candidates):
        if sum(cf * Fraction(r) ** e for e, cf in coeffs.items()) == 0:
            roots.append(r)
    return sorted(roots)


def _lcm_denominators(values):
    from math import lcm

    out = 1
    for v in values:
        out = lcm(out, v.denominator)
    return out


def groebner_certificate() -> tuple[MultiPoly, MultiPoly]:
    """(f2 - f7 - f4 - f5, 2(u^4 - u^3)); equal as polynomials."""
    s = build_menon_system()
    lhs = s["f2"] - s["f7"] - s["f4"] - s["f5"]
    return lhs, parse_poly(CLAIMED_G0).scale(2)


def verify_groebner_claim(order: MonomialOrder = CANONICAL_ORDER) -> dict:
    """Check that u^4 - u^3 lies in <f0, ..., f7> and list the reduced basis."""
    system = build_menon_system()
    gens = system.ideal_generators
    g0 = parse_poly(CLAIMED_G0)
    basis = buchberger(gens, order)
    lhs, rhs = groebner_certificate()
    univariate = basis.univariate("u")
    return {
        "claim": CLAIMED_G0,
        "membership": {
            "lex": ideal_member(g0, gens, LEX),
            "grevlex": ideal_member(g0, gens, GREVLEX),
            "canonical": not normal_form(g0, basis),
        },
        "certificate": {
            "identity": "f2 - f7 - f4 - f5 = 2*(u^4 - u^3)",
            "expanded": lhs,
            "holds": lhs == rhs,
        },
        "order": str(order),
        "basis": list(basis.generators),
        "univariate_in_u": [
            {"poly": g, "integer_roots": integer_roots(g)} for g in univariate
        ],
        "claim_position": next(
            (i for i, g in enumerate(basis.generators) if g == g0), None
        ),
        "all_generators_reduce_to_zero": all(
            not normal_form(f, basis) for f in system.select(system.names())
        ),
    }
