import pytest
import sympy as sp

from khashuffle import (
    GEQ,
    LEQ,
    ExtendedElement,
    RatFunc,
    pair_extended,
    pair_functions,
    pair_h,
    pair_shuffle,
    parse_expr,
    ParseContext,
    shuffle_product,
    ext_coproduct,
    ext_product,
    pair_tensor,
)
from khashuffle.errors import AmbiguousPoleOrder, DegenerateWeight, PoleOnContour
from khashuffle.pairing import (
    INSIDE,
    OUTSIDE,
    classify_pole,
    determinant,
    integrate_variable,
    psi_kernel,
)
from khashuffle.quiver import Edge, QuiverModel, dimvec
from khashuffle.tensor import h_gen

from conftest import make_element, shuffle_el
from oracles import ratfunc_to_sympy

q, p, t, z = sp.symbols("q p t z")
CTX = ParseContext(symbols={"q", "p", "t", "z"})


@pytest.mark.parametrize("mono,where", [
    ({"q": 1}, INSIDE), ({"p": -1}, INSIDE), ({"q": 2, "p": -1}, INSIDE),
    ({"q": -1}, OUTSIDE), ({"p": 1}, OUTSIDE), ({"q": -1, "p": 2}, OUTSIDE),
    ({"q": 1, "t": 3}, INSIDE),
])
def test_classify_pole(mono, where):
    assert classify_pole(tuple(sorted(mono.items()))) == where


def test_classify_pole_errors():
    with pytest.raises(PoleOnContour):
        classify_pole((("t", 1),))
    with pytest.raises(AmbiguousPoleOrder):
        classify_pole((("p", 1), ("q", 1)))


@pytest.mark.parametrize("text,expr", [
    ("z^2/((1 - q*z^-1)*(1 - z*p^-1))", z ** 2 / ((1 - q / z) * (1 - z / p))),
    ("z^-1/((1 - q*z^-1)^2*(1 - z*p^-1))", 1 / (z * (1 - q / z) ** 2 * (1 - z / p))),
    ("(1 + z)/((1 - q*t*z^-1)*(1 - q^2*z^-1))", (1 + z) / ((1 - q * t / z) * (1 - q ** 2 / z))),
])
def test_integrate_variable_matches_sympy_residues(text, expr):
    # poles inside the unit circle for |q| < 1 < |p|: z = 0 and z = q-multiples
    got = ratfunc_to_sympy(integrate_variable(parse_expr(text, CTX), "z"))
    g = sp.together(expr / z)
    inside = [0] + [r for r in sp.roots(sp.denom(g), z) if r != 0 and sp.Poly(r, q).degree() > 0]
    want = sum(sp.residue(g, z, r) for r in set(inside))
    assert sp.simplify(got - want) == 0


def test_psi_kernel_rejects_trivial_loop():
    Q = QuiverModel([0], [Edge("l", 0, 0)], {"l": {}})
    with pytest.raises(DegenerateWeight):
        psi_kernel(Q, dimvec({0: 1}))


def test_degree_one_jordan_value(J):
    # one variable: Psi = (1-q^2)/((1-q^-1)(1-p^2)), integrate the constant term, p -> q
    got = pair_shuffle(J, shuffle_el(J, {0: 1}, "1"), shuffle_el(J, {0: 1}, "1"))
    assert got == RatFunc.inverse_binomial((("q", -1),))


@pytest.mark.parametrize("a,b", [(1, 0), (2, -1), (0, -2), (1, 1)])
def test_orthogonality_of_total_degree(J, Q3, a, b):
    for Q in (J, Q3):
        x = shuffle_el(Q, {0: 1}, f"z[0,1]^({a})")
        y = shuffle_el(Q, {0: 1}, f"z[0,1]^({b})")
        assert pair_shuffle(Q, x, y).is_zero()


def test_unequal_dimensions_pair_to_zero(J):
    assert pair_shuffle(J, shuffle_el(J, {0: 1}, "1"), shuffle_el(J, {0: 2}, "1")).is_zero()


def test_region_independence_degree_two(J, Q3):
    for Q in (J, Q3):
        f = shuffle_el(Q, {0: 2}, "z[0,1]^-1 + z[0,2]^-1").value
        g = shuffle_product(Q, shuffle_el(Q, {0: 1}, "z[0,1]"), shuffle_el(Q, {0: 1}, "1"))
        a = pair_functions(Q, f, g.value, g.dim, variable_order=["z[0,1]", "z[0,2]"])
        b = pair_functions(Q, f, g.value, g.dim, variable_order=["z[0,2]", "z[0,1]"])
        assert a == b


def test_h_pairing_is_diagonal(J):
    for n in range(4):
        for m in range(4):
            v = pair_h(J, h_gen(0, n), h_gen(0, m))
            assert v.is_zero() == (n != m)


def test_h_pairing_with_shuffle_part_vanishes(J):
    x = make_element(J, {0: 1}, "1", LEQ)
    assert pair_extended(J, x, ExtendedElement.h(GEQ, 0, 1)).is_zero()
    assert pair_extended(J, ExtendedElement.unit(LEQ), make_element(J, {0: 1}, "1")).is_zero()


@pytest.mark.parametrize("n", [0, 1, 2])
def test_hopf_identity_with_h_factor(J, n):
    """``(x1 * x2, X) = (x1 (x) x2, Delta X)`` with an h-generator among the factors."""
    x1 = ExtendedElement.h(LEQ, 0, n)
    for k in (-1, 0, 1):
        x2 = make_element(J, {0: 1}, f"z[0,1]^({k})", LEQ)
        X = make_element(J, {0: 1}, f"z[0,1]^({n - k})", GEQ)
        lhs = pair_extended(J, ext_product(J, x1, x2), X)
        rhs = pair_tensor(J, ext_coproduct(J, X, n + 4), [x1, x2])
        assert lhs == rhs


def test_determinant():
    one, two = RatFunc.const(1), RatFunc.const(2)
    zero = RatFunc.const(0)
    assert determinant([[one, two], [two, one]]) == RatFunc.const(-3)
    assert determinant([[zero, one, zero], [one, zero, zero], [zero, zero, two]]) == RatFunc.const(-2)
