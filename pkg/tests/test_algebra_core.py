from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from khashuffle import LaurentPoly, ParseContext, RatFunc, parse_expr
from khashuffle.errors import (
    DenominatorVanishes,
    ExprSyntaxError,
    NonBinomialDenominator,
    NonExpandableFactor,
    PoleAtPEqualsQ,
    UnknownSymbol,
)
from khashuffle.laurent import exact_divide_binomial, mono_from_dict
from khashuffle.series import expand_series

from oracles import ratfunc_to_sympy

q, t, u = sp.symbols("q t u")
CTX = ParseContext(symbols={"q", "p", "t", "u"})


def P(text):
    return parse_expr(text, CTX)


monos = st.dictionaries(st.sampled_from(["q", "t", "u"]), st.integers(-3, 3), max_size=3)
polys = st.dictionaries(monos.map(lambda d: mono_from_dict(d)),
                        st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=4
                        ).map(LaurentPoly)
POINT = {"q": Fraction(2, 3), "t": Fraction(-5, 7), "u": Fraction(9, 4), "p": Fraction(3)}


def ev(p):
    return RatFunc.coerce(p).evaluate(POINT)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly()


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_laurent_evaluation_is_a_homomorphism(a, b):
    assert ev(a * b) == ev(a) * ev(b)
    assert ev(a + b) == ev(a) + ev(b)


@settings(max_examples=40, deadline=None)
@given(polys, monos.filter(bool))
def test_exact_division_by_binomial(a, m):
    m = mono_from_dict(m)
    if not m:
        return
    prod = a * LaurentPoly({(): 1, m: -1})
    assert exact_divide_binomial(prod, m) == a


def test_exact_division_detects_remainder():
    assert exact_divide_binomial(LaurentPoly.const(1), (("q", 1),)) is None


@settings(max_examples=40, deadline=None)
@given(polys, polys, monos, monos)
def test_ratfunc_arithmetic_matches_evaluation(a, b, m1, m2):
    m1, m2 = mono_from_dict(m1), mono_from_dict(m2)
    if not m1 or not m2:
        return
    f = RatFunc(a, {m1: 1})
    g = RatFunc(b, {m2: 2})
    for h, val in ((f + g, ev(f) + ev(g)), (f * g, ev(f) * ev(g)), (f - g, ev(f) - ev(g))):
        assert h.evaluate(POINT) == val
        assert h.simplify().evaluate(POINT) == val


def test_simplify_cancels_factors_and_partial_powers():
    assert str(P("(-q - q^2)/(1 - q^2)").simplify()) == "-q / (1 - q)"
    assert str(P("(1 + q^2)/(1 - q^4)").simplify()) == "1 / (1 - q^2)"
    assert str(P("(1 - q)/((1 - q)*(1 - t))").simplify()) == "1 / (1 - t)"
    f = P("(1 - q^3)/((1 - q)*(1 - q^6))")
    assert sp.simplify(ratfunc_to_sympy(f.simplify()) - 1 / ((1 - q) * (1 + q ** 3))) == 0


def test_equality_across_representations():
    assert P("1/(1 - q^-1)") == P("-q/(1 - q)")
    assert P("q^-1*t") * P("q*t^-1") == RatFunc.const(1)


def test_inverse_and_power():
    f = P("2*q - 2*t")
    assert f * f.inverse() == RatFunc.const(1)
    assert P("(1 - q)")**-2 == P("1/(1 - q)^2")
    with pytest.raises(NonBinomialDenominator):
        P("1 + q + t").inverse()


def test_limit_p_to_q_removes_singularity():
    f = P("(1 - p*q^-1)/(1 - p^2*q^-2)")
    assert f.limit_p_to_q() == RatFunc.const(Fraction(1, 2))
    with pytest.raises(PoleAtPEqualsQ):
        P("1/(1 - p*q^-1)").limit_p_to_q()


def test_substitute_and_vanishing_denominator():
    f = P("1/(1 - q*t)")
    assert f.substitute({"t": (("q", 1),)}) == P("1/(1 - q^2)")
    with pytest.raises(DenominatorVanishes):
        f.substitute({"t": (("q", -1),)})


def test_derivative_matches_sympy():
    f = P("(q + u^2)/(1 - q*u)^2")
    got = ratfunc_to_sympy(f.diff("u"))
    want = sp.diff((q + u ** 2) / (1 - q * u) ** 2, u)
    assert sp.simplify(got - want) == 0


def test_json_round_trip_and_stability():
    f = P("(3/2 - q*t^-1)/((1 - q^2)*(1 - t)^2)")
    assert RatFunc.from_json(f.to_json()) == f
    assert f.dumps() == RatFunc.from_json(f.to_json()).dumps()
    assert f.to_json()["numerator"][0][0] in ("3/2", "-1")


def test_canonical_text():
    assert str(P("1 + q^-1")) == "1 + q^-1"
    assert str(P("0")) == "0"


# -- parser ----------------------------------------------------------------------

def test_parse_block_variables_and_integers():
    ctx = ParseContext(symbols={"q", "p"}, integers={"a": -2})
    f = parse_expr("z[0,1]^a + z[0,2]^a", ctx)
    assert f == RatFunc.var("z[0,1]", -2) + RatFunc.var("z[0,2]", -2)


def test_parse_errors_carry_positions():
    with pytest.raises(UnknownSymbol) as exc:
        P("q + s")
    assert exc.value.position == 4
    with pytest.raises(ExprSyntaxError):
        P("q + ")
    with pytest.raises(NonBinomialDenominator):
        P("1/(1 + q + t)")


# -- series expansion ---------------------------------------------------------------

def test_expand_series_geometric():
    f = P("1/(1 - u*t^-1)")
    s = expand_series(f, {"u"}, 3)
    assert s.value == P("1 + u*t^-1 + u^2*t^-2 + u^3*t^-3")


def test_expand_series_flips_negative_factor():
    f = P("1/(1 - t*u^-1)")  # = -u t^-1 / (1 - u t^-1)
    s = expand_series(f, {"u"}, 2)
    assert s.value == P("-u*t^-1 - u^2*t^-2")


def test_expand_series_rejects_degree_zero_factor():
    with pytest.raises(NonExpandableFactor):
        expand_series(parse_expr("1/(1 - z[0,1]*z[0,2]^-1)"), {"u"}, 2)
