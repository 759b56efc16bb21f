import pytest
import sympy as sp

from khashuffle import (
    GEQ,
    LEQ,
    ExtendedElement,
    antipode,
    check_antipode,
    check_coassociativity,
    check_counit,
    check_multiplicativity,
    counit,
    ext_coproduct,
    ext_product,
)
from khashuffle.errors import DimensionMismatch
from khashuffle.quiver import dimvec
from khashuffle.tensor import h_gen, h_mul

from conftest import make_element
from oracles import laurent_coefficients, ratfunc_to_sympy

q, s = sp.symbols("q s")
Z = sp.Symbol("z[0,1]")
TAU0 = laurent_coefficients((1 / q - s) / (1 - s / q), s, 6)


def terms_by_h(u):
    return {hs[0]: ratfunc_to_sympy(f) for (dims, hs), f in u.terms.items()}


@pytest.mark.parametrize("side", [GEQ, LEQ])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_normal_ordering_jordan(J, side, n):
    """``y h(w) = h(w) (y tau(z/w))`` (A>=) and ``y tau(w/z)`` (A<=), coefficientwise."""
    a = 2
    y = make_element(J, {0: 1}, f"z[0,1]^{a}", side)
    got = terms_by_h(ext_product(J, y, ExtendedElement.h(side, 0, n)))
    sign = 1 if side == GEQ else -1
    want = {h_gen(0, n - k): TAU0[k] * Z ** (a + sign * k) for k in range(n + 1)}
    assert set(got) == set(want)
    for h, val in want.items():
        assert sp.simplify(got[h] - val) == 0


def test_h_generators_commute(J):
    h1, h2 = ExtendedElement.h(GEQ, 0, 1), ExtendedElement.h(GEQ, 0, 2)
    assert ext_product(J, h1, h2) == ext_product(J, h2, h1)
    assert list(ext_product(J, h1, h2).terms) == [((((),), (h_mul(h_gen(0, 1), h_gen(0, 2)),)))]


def test_sides_do_not_mix(J):
    with pytest.raises(DimensionMismatch):
        ext_product(J, ExtendedElement.unit(GEQ), ExtendedElement.unit(LEQ))


def test_h_is_group_like(J):
    D = ext_coproduct(J, ExtendedElement.h(GEQ, 0, 3), 6)
    keys = {hs for (_, hs) in D.terms}
    assert keys == {(h_gen(0, k), h_gen(0, 3 - k)) for k in range(4)}
    assert all(f == 1 for f in D.terms.values())


def test_counit_values(J):
    assert counit(make_element(J, {0: 1}, "z[0,1]^3")) == 0
    assert counit(ExtendedElement.h(GEQ, 0, 0)) == 1
    assert counit(ExtendedElement.h(GEQ, 0, 2)) == 0
    assert counit(ExtendedElement.unit(LEQ).scale(5)) == 5


@pytest.mark.parametrize("side", [GEQ, LEQ])
def test_bialgebra_degree_one_both_sides(J, side):
    els = [make_element(J, {0: 1}, f"z[0,1]^({k})", side) for k in (-1, 0, 2)]
    for x in els:
        assert check_coassociativity(J, x, 4)
        assert check_counit(J, x, 4)
        for y in els:
            assert check_multiplicativity(J, x, y, 4)


def test_coproduct_of_degree_two_has_all_components(J):
    x = make_element(J, {0: 2}, "1")
    comps = ext_coproduct(J, x, 3).components()
    d1, d2 = dimvec({0: 1}), dimvec({0: 2})
    assert {(d2, ()), (d1, d1), ((), d2)} <= set(comps)


def test_coalgebra_on_q3_and_a2(Q3, A2):
    for Q, x in ((Q3, make_element(Q3, {0: 1}, "z[0,1]")),
                 (A2, make_element(A2, {0: 1, 1: 1}, "z[0,1]*z[1,1]^-1"))):
        assert check_coassociativity(Q, x, 4)
        assert check_counit(Q, x, 4)


def test_a2_same_vertex_multiplicativity(A2):
    x = make_element(A2, {0: 1}, "z[0,1]")
    assert check_multiplicativity(A2, x, x, 4)


def test_antipode_of_h(J):
    S = antipode(J, ExtendedElement.h(GEQ, 0, 0), 4)
    assert list(S.terms) == [(((),), (h_gen(0, 0, -1),))]


@pytest.mark.parametrize("side", [GEQ, LEQ])
def test_antipode_axiom_jordan(J, side):
    for u in (make_element(J, {0: 1}, "1", side), make_element(J, {0: 1}, "z[0,1]^-1", side),
              ExtendedElement.h(side, 0, 1)):
        assert check_antipode(J, u, 4)

