from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from conftest import fractions, mobius_maps, rational_functions
from semiconj.errors import BothZero, ParseError
from semiconj.ratfun import (
    Polynomial,
    RationalFunction,
    SpherePoint,
    chebyshev,
    compose,
    derivative,
    equals,
    evaluate,
    joukowski,
    normalize,
    parse,
    point_from_json,
    point_to_json,
    power,
    rf_from_json,
    rf_to_json,
)


def P(*cs):
    return Polynomial(cs)


class TestNormalize:
    def test_common_factor_cancels(self):
        f = normalize(P(-2, 0, 2), P(-2, 2))
        assert f.num == P(1, 1) and f.den == P(1)
        assert f.degree == 1

    def test_identity(self):
        f = normalize(P(0, 1), P(1))
        assert f == RationalFunction.identity()

    def test_cubic_over_quadratic(self):
        assert normalize(P(0, -1, 0, 1), P(-1, 0, 1)) == RationalFunction.identity()

    def test_both_zero(self):
        with pytest.raises(BothZero):
            normalize(P(), P())

    def test_denominator_monic(self):
        f = normalize(P(3), P(0, 6))
        assert f.den.lc == 1
        assert f.num == P(Fraction(1, 2))

    def test_zero_numerator(self):
        f = normalize(P(), P(1, 2, 3))
        assert f.degree == 0 and f.num.is_zero() and f.den == P(1)


class TestCompose:
    def test_identity_right_factor(self):
        assert compose(power(2), RationalFunction.identity()) == power(2)

    def test_power_law(self):
        assert compose(power(2), power(3)) == power(6)

    def test_joukowski_with_power(self):
        assert compose(joukowski(2), power(3)) == joukowski(6)

    def test_against_sympy(self):
        f = parse("(64z^3-64z^2-23z+24)/(4z-5)^2")
        g = parse("1/2*(z^2+1/z^2)")
        want = oracles.compose_expr(oracles.expr(f), oracles.expr(g))
        assert oracles.same_map(oracles.expr(compose(f, g)), want)

    def test_inner_constant(self):
        assert compose(power(2), RationalFunction.const(3)) == RationalFunction.const(9)

    def test_pole_of_outer_map(self):
        # 1/z o (z - 1) = 1/(z - 1)
        f = compose(parse("1/z"), parse("z-1"))
        assert f == parse("1/(z-1)")


class TestEvaluate:
    def test_pole_at_infinity(self):
        assert evaluate(power(2), SpherePoint.infinity()).is_infinity

    def test_dihedral_b_at_one(self):
        B = parse("(z^2-2)/(z-2z^3)")
        assert evaluate(B, SpherePoint.exact(1)).value == 1

    def test_chebyshev_at_one(self):
        assert chebyshev(3)(1) == 1

    def test_finite_pole(self):
        assert evaluate(parse("1/(z-2)"), SpherePoint.exact(2)).is_infinity

    def test_value_at_infinity_of_proper_fraction(self):
        assert evaluate(parse("(3z^2+1)/(z^2-5)"), SpherePoint.infinity()).value == 3


class TestDerivative:
    @pytest.mark.parametrize("text, want", [
        ("z^3", "3z^2"),
        ("1/z", "-1/z^2"),
        ("4z^3-3z", "12z^2-3"),
    ])
    def test_examples(self, text, want):
        assert derivative(parse(text)) == parse(want)


class TestEquals:
    def test_normalization(self):
        assert equals(RationalFunction.from_polys(P(0, 0, 1)), RationalFunction.from_polys(P(0, 0, 2), P(2)))

    def test_chebyshev_commute(self):
        lhs = compose(chebyshev(2), chebyshev(3))
        assert equals(lhs, compose(chebyshev(3), chebyshev(2)))
        assert equals(lhs, parse("32z^6-48z^4+18z^2-1"))

    def test_degree_mismatch(self):
        assert not equals(power(2), power(3))


class TestChebyshev:
    def test_base(self):
        assert chebyshev(0) == RationalFunction.const(1)
        assert chebyshev(1) == RationalFunction.identity()

    def test_small(self):
        assert chebyshev(2) == parse("2z^2-1")
        assert chebyshev(6) == parse("32z^6-48z^4+18z^2-1")

    @pytest.mark.parametrize("n", range(0, 9))
    def test_cosine_identity(self, n):
        import math

        for t in (0.1, 0.7, 2.3):
            assert chebyshev(n).eval_complex(math.cos(t)).real == pytest.approx(math.cos(n * t), abs=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            chebyshev(-1)


class TestSpherePoint:
    def test_projective_equality(self):
        assert SpherePoint.projective(2, 4).same_as(SpherePoint.exact(Fraction(1, 2)))
        assert SpherePoint.projective(3, 0).same_as(SpherePoint.infinity())

    def test_not_both_zero(self):
        with pytest.raises((BothZero, ValueError)):
            SpherePoint.projective(0, 0)

    def test_numeric_matches_exact_within_radius(self):
        p = SpherePoint.numeric(0.5 + 1e-12j, 1e-9)
        assert p.same_as(SpherePoint.exact(Fraction(1, 2)))


class TestParse:
    @pytest.mark.parametrize("text", [
        "z^2", "(z^2-2)/(z-2*z^3)", "1/2*(z^2+1/z^2)", "2z**3 - 3z", "-(z+1)^2", "z^(-2)", "x^3 + x",
    ])
    def test_round_trip_through_str(self, text):
        f = parse(text)
        assert parse(str(f)) == f

    def test_fraction_literal_is_exact(self):
        assert parse("1/3*z").num.coeffs == (0, Fraction(1, 3))

    def test_implicit_multiplication(self):
        assert parse("3(z+1)z") == parse("3*z^2+3*z")

    @pytest.mark.parametrize("bad", ["", "z^", "z + * 2", "z y", "1/0", "(z", "z^1.5", "z$"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse(bad)


class TestJson:
    def test_shape(self):
        d = rf_to_json(parse("(z^2+1)/(2z)"))
        assert d["num"] == ["1/2", "0", "1/2"] and d["den"] == ["0", "1"]

    def test_decoder_renormalizes(self):
        f = rf_from_json({"num": ["-2", "0", "2"], "den": ["-2", "2"]})
        assert f == parse("z+1")

    def test_points(self):
        for p in (SpherePoint.infinity(), SpherePoint.exact(Fraction(-3, 7)), SpherePoint.numeric(1 + 2j, 1e-6)):
            assert point_from_json(point_to_json(p)).same_as(p)

    def test_bad_encoding(self):
        with pytest.raises(ParseError):
            rf_from_json({"numerator": []})


# ---------------------------------------------------------------------------
# properties


@given(rational_functions(max_degree=3), rational_functions(max_degree=3))
def test_degree_multiplies(f, g):
    assert compose(f, g).degree == f.degree * g.degree


@given(rational_functions(max_degree=3, coeffs=st.integers(-2, 2)),
       rational_functions(max_degree=3, coeffs=st.integers(-2, 2)),
       rational_functions(max_degree=3, coeffs=st.integers(-2, 2)))
def test_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(rational_functions(max_degree=4), fractions.filter(lambda a: a != 0))
def test_scaling_invariance(f, a):
    assert equals(normalize(f.num.scale(a), f.den.scale(a)), f)


@given(st.integers(1, 6), st.integers(1, 6))
def test_chebyshev_semigroup(m, d):
    assert compose(chebyshev(m), chebyshev(d)) == chebyshev(m * d)


GRID = [Fraction(k, 3) for k in range(-10, 10)]


@given(rational_functions(max_degree=3), rational_functions(max_degree=3))
def test_evaluate_respects_composition(f, g):
    for q in GRID:
        p = SpherePoint.exact(q)
        assert evaluate(compose(f, g), p).same_as(evaluate(f, evaluate(g, p)))


@given(rational_functions(max_degree=4))
def test_reduced_form(f):
    from semiconj.ratfun import poly_gcd

    assert poly_gcd(f.num, f.den).degree == 0
    assert f.den.lc == 1


@given(rational_functions(max_degree=3), rational_functions(max_degree=3))
def test_compose_matches_sympy(f, g):
    want = oracles.compose_expr(oracles.expr(f), oracles.expr(g))
    assert oracles.same_map(oracles.expr(compose(f, g)), want)


@given(rational_functions(max_degree=4))
def test_json_round_trip(f):
    assert rf_from_json(rf_to_json(f)) == f
    assert parse(str(f)) == f


@given(rational_functions(max_degree=3), mobius_maps())
def test_derivative_chain_rule(f, mu):
    assume(f.degree >= 1)
    lhs = derivative(compose(f, mu))
    rhs = compose(derivative(f), mu) * derivative(mu)
    assert lhs == rhs
