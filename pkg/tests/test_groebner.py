import random

import pytest
import sympy

from cdsverify.errors import UsageError
from cdsverify.groebner import (
    GroebnerError,
    IdealBasis,
    buchberger,
    ideal_member,
    is_groebner_basis,
    is_reduced,
    normal_form,
    s_polynomial,
)
from cdsverify.menon import CANONICAL_ORDER
from cdsverify.polyalg import GREVLEX, LEX, MonomialOrder, MultiPoly, parse_poly

XY = ("x", "y")
VARS = ("x0", "x1", "x2", "x3", "u")


def P(text, variables=XY):
    return parse_poly(text, variables)


def test_s_polynomial_hand_example():
    assert s_polynomial(P("x^2 + y"), P("x*y + 1"), LEX) == P("y^2 - x")


def test_s_polynomial_of_self_is_zero():
    p = P("3*x^2*y - y + 7")
    assert s_polynomial(p, p, LEX).is_zero()


def test_s_polynomial_coprime_reduces_to_zero():
    x, y = P("x"), P("y")
    assert normal_form(s_polynomial(x, y, LEX), [x, y], LEX).is_zero()


def test_s_polynomial_rejects_zero():
    with pytest.raises(UsageError):
        s_polynomial(MultiPoly.zero(XY), P("x"), LEX)


def test_normal_form_examples():
    x = ("x",)
    assert normal_form(P("x^2", x), [P("x - 1", x)], LEX) == 1
    assert normal_form(MultiPoly.zero(XY), [P("x")], LEX).is_zero()


def test_buchberger_small_cases():
    x = ("x",)
    assert buchberger([P("x^2 - 1", x), P("x - 1", x)], LEX).generators == (P("x - 1", x),)
    for order in (LEX, GREVLEX):
        assert buchberger([P("7", XY)], order).generators == (P("1", XY),)


def test_buchberger_textbook():
    basis = buchberger([P("x^2 + y"), P("x*y + 1")], LEX)
    assert basis.generators == (P("x - y^2"), P("y^3 + 1"))


def _sympy_basis(polys, variables, order):
    syms = sympy.symbols(variables)
    exprs = [sympy.sympify(str(p).replace("^", "**")) for p in polys]
    G = sympy.groebner(exprs, *syms, order=order)
    return {parse_poly(str(g.as_expr()).replace("**", "^"), variables) for g in G.exprs}


@pytest.mark.parametrize("order, name", [(CANONICAL_ORDER, "lex"),
                                         (MonomialOrder("grevlex", VARS), "grevlex")])
def test_menon_basis_matches_sympy(system, order, name):
    ours = buchberger(system.ideal_generators, order)
    want = _sympy_basis(system.ideal_generators, VARS, name)
    monic = {g.monic(order) for g in want}
    assert set(ours.generators) == monic


def test_random_ideals_match_sympy():
    rng = random.Random(5)
    variables = ("a", "b", "c")
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                terms[tuple(rng.randint(0, 2) for _ in variables)] = rng.randint(-3, 3)
            p = MultiPoly(variables, terms)
            if p:
                gens.append(p)
        if not gens:
            continue
        for order, name in ((LEX, "lex"), (GREVLEX, "grevlex")):
            ours = buchberger(gens, order)
            want = {g.monic(order) for g in _sympy_basis(gens, variables, name)}
            assert set(ours.generators) == want


def test_basis_properties(system):
    gens = system.ideal_generators
    for order in (CANONICAL_ORDER, GREVLEX):
        basis = buchberger(gens, order)
        assert basis.reduced and is_reduced(basis) and is_groebner_basis(basis)
        for f in system.select(system.names()):
            assert normal_form(f, basis).is_zero()
        assert buchberger(gens, order).generators == basis.generators


def test_normal_form_idempotent(system):
    basis = buchberger(system.ideal_generators, CANONICAL_ORDER)
    rng = random.Random(3)
    for _ in range(30):
        terms = {tuple(rng.randint(0, 3) for _ in VARS): rng.randint(-4, 4) for _ in range(4)}
        p = MultiPoly(VARS, terms)
        r = normal_form(p, basis)
        assert normal_form(r, basis) == r
        lms = basis.leading_monomials()
        assert not any(all(a <= b for a, b in zip(lm, e)) for lm in lms for e in r.terms)


@pytest.mark.parametrize(
    "text, expected",
    [("u^4 - u^3", True), ("u", False), ("x0 + x1 + x2 + x3 - 2*u^2 + u", True)],
)
@pytest.mark.parametrize("order", [LEX, GREVLEX, CANONICAL_ORDER])
def test_menon_membership(system, text, expected, order):
    assert ideal_member(parse_poly(text), system.ideal_generators, order) is expected


def test_iteration_cap_raises():
    gens = [P("x^3 - y^2"), P("x*y^2 - x - 1")]
    with pytest.raises(GroebnerError):
        buchberger(gens, LEX, max_reductions=0)


def test_zero_ideal():
    basis = buchberger([MultiPoly.zero(XY)], LEX)
    assert isinstance(basis, IdealBasis) and len(basis) == 0
    assert ideal_member(MultiPoly.zero(XY), [MultiPoly.zero(XY)], LEX)
