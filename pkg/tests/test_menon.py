from itertools import product

import pytest

from cdsverify.errors import BudgetError, UsageError
from cdsverify.menon import (
    PRINTED_LEMMA7,
    derive_lemma7_coefficients,
    enumerate_solutions,
    groebner_certificate,
    integer_roots,
    lemma7_comparison,
    menon_params,
    verify_groebner_claim,
)
from cdsverify.polyalg import MENON_VARIABLES, MultiPoly, parse_poly

PRINTED_POINTS = [(0, 0, 0, 0, 0), (0, 0, 0, 1, 1), (0, 0, 1, 0, 1), (0, 1, 0, 0, 1), (1, 0, 0, 0, 1)]


def direct_system(x0, x1, x2, x3, u):
    """The nine equations written out by hand, independent of the parser."""
    c = u * u * (u * u - u)
    sq = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3 - u * u - c
    return [
        x0 + x1 + x2 + x3 - 2 * u * u + u,
        sq,
        x0 * x3 + x1 * x0 + x2 * x1 + x3 * x2 - c,
        2 * (x0 * x2 + x1 * x3) - c,
        x0 * x1 + x1 * x2 + x2 * x3 + x3 * x0 - c,
        x0 * x1 + x1 * x2 + x2 * x3 - x3 * x0 - c,
        -c,
        x0 * x3 - x1 * x0 - x2 * x1 - x3 * x2 - c,
        sq,
    ]


def brute_force(u_lo, u_hi, count=9):
    out = []
    for u in range(u_lo, u_hi + 1):
        for xs in product(range(u * u + 1), repeat=4):
            if not any(direct_system(*xs, u)[:count]):
                out.append((*xs, u))
    return out


def test_system_agrees_with_hand_formulas(system):
    for point in product(range(3), repeat=5):
        got = [system[f"f{i}"](*point) for i in range(9)]
        assert got == direct_system(*point)


def test_system_shapes(system):
    f0 = system["f0"].substitute({"u": 1})
    assert f0 == parse_poly("x0 + x1 + x2 + x3 - 1", f0.variables)
    f1 = system["f1"].substitute({"u": 1})
    assert f1 == parse_poly("x0^2 + x1^2 + x2^2 + x3^2 - 1", f1.variables)
    assert system["f4"] - system["f5"] == parse_poly("2*x3*x0")
    assert system["f1"] == system["f8"]
    assert system["f0"].total_degree() == 2 and system["f0"].degree_in("x0") == 1
    assert [system.provenance[f"f{i}"] for i in range(9)] == ["eq6"] * 5 + ["eq7"] * 4


def test_lemma7_coordinates():
    const, z1, z2, z3 = derive_lemma7_coefficients()
    assert const == parse_poly("x0^2 + x1^2 + x2^2 + x3^2")
    assert z1 == parse_poly("x0*x1 + x1*x2 + x2*x3 - x3*x0")
    assert z2.is_zero()
    assert z3 == parse_poly("x0*x3 - x1*x0 - x2*x1 - x3*x2")


def test_lemma7_matches_printed_and_system():
    rows = lemma7_comparison()
    assert [r["coordinate"] for r in rows] == [c for c, _, _ in PRINTED_LEMMA7]
    assert all(r["matches_printed"] and r["matches_system"] for r in rows)
    assert [r["identically_zero"] for r in rows] == [False, False, True, False]


def test_lemma7_numeric_oracle():
    # evaluate theta(z) theta(z^-1) numerically at z = exp(i pi/4)
    import cmath

    z = cmath.exp(1j * cmath.pi / 4)
    coords = derive_lemma7_coefficients()
    for xs in product(range(3), repeat=4):
        t = sum(x * z**i for i, x in enumerate(xs))
        ti = sum(x * z**-i for i, x in enumerate(xs))
        vals = [float(c(*xs, 0)) for c in coords]
        assert abs(t * ti - sum(v * z**i for i, v in enumerate(vals))) < 1e-9


def test_enumerate_examples():
    assert enumerate_solutions(0, 1) == PRINTED_POINTS
    assert enumerate_solutions(2, 3) == []
    assert enumerate_solutions(0, 0) == [(0, 0, 0, 0, 0)]


def test_enumerate_matches_brute_force():
    assert enumerate_solutions(0, 3) == brute_force(0, 3)


def test_enumerated_points_vanish(system):
    for point in enumerate_solutions(0, 2):
        assert all(system[name](*point) == 0 for name in system.names())


def test_partial_system_is_superset():
    for u in range(0, 4):
        full = set(enumerate_solutions(u, u))
        partial = set(enumerate_solutions(u, u, equations=["f0", "f1", "f2", "f3", "f4"]))
        assert full <= partial
        assert partial == set(brute_force(u, u, count=5))


def test_enumerate_workers_deterministic():
    assert enumerate_solutions(0, 3, workers=3) == enumerate_solutions(0, 3)


def test_enumerate_budget_and_usage():
    with pytest.raises(BudgetError):
        enumerate_solutions(0, 4, max_work=1000)
    with pytest.raises(UsageError):
        enumerate_solutions(3, 1)
    with pytest.raises(UsageError):
        enumerate_solutions(0, 1, equations=["f9"])


@pytest.mark.parametrize(
    "u, sign, expected",
    [(1, "-", (4, 1, 0, 1)), (1, "+", (4, 3, 2, 1)), (0, "-", (0, 0, 0, 0)), (0, "+", (0, 0, 0, 0))],
)
def test_menon_params(u, sign, expected):
    assert menon_params(u, sign).as_tuple() == expected


def test_menon_params_invariants():
    for u in range(4):
        for sign in "+-":
            p = menon_params(u, sign)
            assert p.k * (p.k - 1) == p.lam * (p.v - 1)
            assert p.n == p.k - p.lam == u * u


def test_certificate():
    lhs, rhs = groebner_certificate()
    assert lhs == rhs


def test_verify_groebner_claim():
    report = verify_groebner_claim()
    assert all(report["membership"].values())
    assert report["certificate"]["holds"]
    assert report["all_generators_reduce_to_zero"]
    univ = report["univariate_in_u"]
    assert [str(e["poly"]) for e in univ] == ["u^4 - u^3"]
    assert univ[0]["integer_roots"] == [0, 1]


@pytest.mark.parametrize(
    "text, roots",
    [("u^4 - u^3", [0, 1]), ("u^2 - 4", [-2, 2]), ("2*u - 1", []), ("u^2/2 - 2", [-2, 2]), ("3", [])],
)
def test_integer_roots(text, roots):
    assert integer_roots(parse_poly(text)) == roots


def test_integer_roots_rejects_multivariate():
    with pytest.raises(UsageError):
        integer_roots(parse_poly("x0 + u"))
    with pytest.raises(UsageError):
        integer_roots(MultiPoly.zero(MENON_VARIABLES))
