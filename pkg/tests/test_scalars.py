from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import small_fractions
from gacalc.scalars import (DOMAINS, RationalFunction, clear_denominators, parse_exact, poly,
                            poly_divmod, poly_gcd, poly_mul, poly_to_text, scalar_from_json,
                            scalar_json, scalar_text)

polys = st.lists(small_fractions, min_size=1, max_size=4).map(poly)
nonzero_polys = polys.filter(bool)
ratfuns = st.builds(RationalFunction, polys, nonzero_polys)
points = st.builds(F, st.integers(-50, 50), st.integers(1, 7))

s = RationalFunction.s()


def test_canonical_form_cancels_common_factors():
    f = (s * s - 1) / (s - 1)
    assert f == s + 1
    assert f.den == (F(1),)
    g = RationalFunction((2, 4), (6, 2))          # (2+4s)/(6+2s) -> (1+2s)/(3+s)
    assert g.num == (F(1), F(2)) and g.den == (F(3), F(1))


def test_zero_and_division_errors():
    assert RationalFunction() == 0
    assert not RationalFunction()
    with pytest.raises(ZeroDivisionError):
        RationalFunction((1,), ())
    with pytest.raises(ZeroDivisionError):
        s / RationalFunction()


def test_text_and_json_round_trip():
    f = (3 * s + 1) / (s * s + F(1, 2))
    assert f.to_text() == "(1 + 3*s)/(1/2 + s^2)"
    assert RationalFunction.from_json(f.to_json()) == f
    assert scalar_from_json(scalar_json(f)) == f
    assert scalar_from_json(scalar_json(F(-7, 3))) == F(-7, 3)
    assert scalar_text(F(5, 1)) == "5" and scalar_text(2.0) == "2" and scalar_text(0.1234567) == "0.12346"


def test_parse_exact_keeps_decimals_exact():
    assert parse_exact("0.0289") == F(289, 10000)
    assert parse_exact("-3/4") == F(-3, 4)
    assert parse_exact(7) == F(7)
    assert DOMAINS["rational"].from_decimal_text("0.1") == F(1, 10)
    assert DOMAINS["ratfun"].one == RationalFunction.const(1)
    assert DOMAINS["float"].is_zero(1e-13)


def test_clear_denominators():
    a, b = poly([F(1, 2), F(1, 3)]), poly([F(3, 4)])
    assert clear_denominators(a, b) == ([6, 4], [9])
    assert poly_to_text(poly([15052095, 2552384, 0, 16])) == "15052095 + 2552384*s + 16*s^3"


@settings(max_examples=200, deadline=None)
@given(ratfuns, ratfuns, ratfuns)
def test_field_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert f - f == 0
    if f:
        assert f * (1 / f) == 1


@settings(max_examples=200, deadline=None)
@given(ratfuns, ratfuns, points)
def test_evaluation_is_a_homomorphism(f, g, x):
    assume(all(poly_eval_nonzero(r.den, x) for r in (f, g)))
    assert (f + g)(x) == f(x) + g(x)
    assert (f * g)(x) == f(x) * g(x)


def poly_eval_nonzero(p, x):
    return sum(c * x ** k for k, c in enumerate(p)) != 0


@settings(max_examples=200, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_contains_common_factor(a, b, h):
    g = poly_gcd(poly_mul(a, h), poly_mul(b, h))
    assert g[-1] == 1                                # monic
    for p in (poly_mul(a, h), poly_mul(b, h)):
        assert not poly_divmod(p, g)[1]              # divides both
    assert not poly_divmod(g, poly_gcd(h, h))[1]     # contains h
