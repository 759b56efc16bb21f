import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khashuffle import ShuffleElement, jordan_quiver, brute_force_product, coproduct_raw, dimvec, shuffle_product
from khashuffle.errors import NotSymmetricElement
from khashuffle.laurent import block_var

from conftest import shuffle_el
from oracles import brute_shuffle_value

POINT = {"q": Fraction(3, 7), "t": Fraction(5, 2), "p": Fraction(11, 3)}


def test_symmetry_is_checked(J):
    with pytest.raises(NotSymmetricElement):
        shuffle_el(J, {0: 2}, "z[0,1]")


def test_unit(J):
    x = shuffle_el(J, {0: 2}, "z[0,1] + z[0,2]")
    one = ShuffleElement.unit()
    assert shuffle_product(J, one, x) == x
    assert shuffle_product(J, x, one) == x


def test_jordan_degree_one_product(J):
    # e_a * e_b = z1^a z2^b zeta(z1/z2) + z2^a z1^b zeta(z2/z1), zeta(u) = (1 - q^-1 u^-1)/(1 - u^-1)
    got = shuffle_product(J, shuffle_el(J, {0: 1}, "z[0,1]"), shuffle_el(J, {0: 1}, "1"))
    pt = {**POINT, "z[0,1]": Fraction(2), "z[0,2]": Fraction(7, 3)}
    z1, z2, qq = pt["z[0,1]"], pt["z[0,2]"], pt["q"]

    def zeta(x):
        return (1 - 1 / (qq * x)) / (1 - 1 / x)

    want = z1 * zeta(z1 / z2) + z2 * zeta(z2 / z1)
    assert got.value.evaluate(pt) == want
    assert got.is_polynomial()


def test_op_product_swaps(J):
    x, y = shuffle_el(J, {0: 1}, "z[0,1]"), shuffle_el(J, {0: 1}, "z[0,1]^-1")
    assert shuffle_product(J, x, y, op=True) == shuffle_product(J, y, x)


@pytest.mark.parametrize("name", ["J", "Q3", "A2"])
def test_coset_sum_matches_internal_brute_force(name, request):
    Q = request.getfixturevalue(name)
    verts = Q.vertices
    x = shuffle_el(Q, {verts[-1]: 1}, f"z[{verts[-1]},1]^-1")
    y = shuffle_el(Q, {verts[0]: 2}, f"z[{verts[0]},1] + z[{verts[0]},2]")
    assert shuffle_product(Q, x, y) == brute_force_product(Q, x, y)


@settings(max_examples=15, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_associativity_jordan(a, b, c):
    Q = jordan_quiver()
    x, y, z = (shuffle_el(Q, {0: 1}, f"z[0,1]^({k})") for k in (a, b, c))
    left = shuffle_product(Q, shuffle_product(Q, x, y), z)
    right = shuffle_product(Q, x, shuffle_product(Q, y, z))
    assert left == right


def test_associativity_q3_mixed_degrees(Q3):
    x = shuffle_el(Q3, {0: 1}, "z[0,1]")
    y = shuffle_el(Q3, {0: 2}, "z[0,1]^-1 + z[0,2]^-1")
    z = shuffle_el(Q3, {0: 1}, "1")
    assert shuffle_product(Q3, shuffle_product(Q3, x, y), z) == \
        shuffle_product(Q3, x, shuffle_product(Q3, y, z))


def test_associativity_a2(A2):
    x = shuffle_el(A2, {0: 1}, "z[0,1]")
    y = shuffle_el(A2, {1: 1}, "1")
    z = shuffle_el(A2, {0: 1, 1: 1}, "z[0,1]*z[1,1]^-1")
    assert shuffle_product(A2, shuffle_product(A2, x, y), z) == \
        shuffle_product(A2, x, shuffle_product(A2, y, z))


def test_products_are_laurent_polynomials(Q3, A2):
    rng = random.Random(7)
    for Q in (Q3, A2):
        for _ in range(4):
            v = rng.choice(Q.vertices)
            x = shuffle_el(Q, {v: 1}, f"z[{v},1]^({rng.randint(-2, 2)})")
            y = shuffle_el(Q, {v: 1}, f"z[{v},1]^({rng.randint(-2, 2)})")
            assert shuffle_product(Q, x, y).is_polynomial()


def test_product_against_independent_oracle_q3(Q3):
    x = shuffle_el(Q3, {0: 2}, "z[0,1]*z[0,2]^-1 + z[0,2]*z[0,1]^-1")
    y = shuffle_el(Q3, {0: 1}, "z[0,1]^2")
    got = shuffle_product(Q3, x, y)
    zp = {(0, 1): Fraction(2), (0, 2): Fraction(5, 3), (0, 3): Fraction(-7, 2)}
    vals = {**POINT, **{block_var("z", v, j): c for (v, j), c in zp.items()}}
    f = lambda p: p[(0, 1)] / p[(0, 2)] + p[(0, 2)] / p[(0, 1)]  # noqa: E731
    g = lambda p: p[(0, 1)] ** 2  # noqa: E731
    assert got.value.evaluate(vals) == brute_shuffle_value(Q3, f, {0: 2}, g, {0: 1}, zp, POINT)


def test_raw_coproduct_jordan(J):
    # Delta'_{1,1}(e_0 * e_0) is e_0 (x) e_0 times zeta(x/y)/zeta(y/x) expanded for |x| << |y|
    x = shuffle_product(J, shuffle_el(J, {0: 1}, "1"), shuffle_el(J, {0: 1}, "1"))
    s = coproduct_raw(J, x, dimvec({0: 1}), dimvec({0: 1}), 3)
    pt = {"q": Fraction(3, 7), "x[0,1]": Fraction(1, 1000), "y[0,1]": Fraction(1)}
    series = s.value.value.evaluate(pt)
    qq = pt["q"]
    r = pt["x[0,1]"] / pt["y[0,1]"]
    zeta = lambda v: (1 - 1 / (qq * v)) / (1 - 1 / v)  # noqa: E731
    exact = zeta(r) + zeta(1 / r)
    exact /= zeta(1 / r)
    assert abs(series - exact) < Fraction(1, 10 ** 6)
