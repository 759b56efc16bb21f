from fractions import Fraction

import pytest
import sympy as sp

from khashuffle import Edge, PotentialWord, QuiverModel, jordan_quiver, triple, validate
from khashuffle.errors import NotSymmetric, PotentialNotInvariant, UnknownSymbol
from khashuffle.quiver import (
    dim_add,
    dim_splits,
    dim_sub,
    dimvec,
    mu_factor,
    tau_factor,
    tripled_potential,
    zeta_factor,
)

from conftest import a2_base
from oracles import ratfunc_to_sympy

q, t, u = sp.symbols("q t u")


def test_jordan_validates():
    assert validate(jordan_quiver(), [])


def test_non_symmetric_rejected():
    Q = QuiverModel([0, 1], [Edge("e", 0, 1)], {"e": {"q": 1}})
    with pytest.raises(NotSymmetric):
        validate(Q)


def test_undeclared_weight_symbol():
    with pytest.raises(UnknownSymbol):
        QuiverModel([0], [Edge("l", 0, 0)], {"l": {"s": 1}})


def test_potential_invariance():
    Q = triple(jordan_quiver())
    assert validate(Q, tripled_potential(jordan_quiver()))
    bad = PotentialWord(("loop", "loop_bar"), Fraction(1))
    with pytest.raises(PotentialNotInvariant):
        validate(Q, [bad])


def test_triple_minimal_and_full_torus():
    Q = triple(a2_base())
    assert Q.is_symmetric()
    assert sorted(e.name for e in Q.edges) == ["e", "e_bar", "omega_0", "omega_1"]
    assert dict(Q.weight["e"]) == {"q": 1, "t": 1}
    assert dict(Q.weight["omega_1"]) == {"q": -2}
    F = triple(a2_base(), full_torus=True)
    assert "q_e" in F.parameters and dict(F.weight["e_bar"]) == {"q": 1, "q_e": -1}
    validate(F, tripled_potential(a2_base()))


def test_zeta_and_tau_jordan():
    J = jordan_quiver()
    assert sp.simplify(ratfunc_to_sympy(zeta_factor(J, 0, 0)) - (1 - 1 / (q * u)) / (1 - 1 / u)) == 0
    # tau(u) = (q^-1 - u)/(1 - q^-1 u)
    assert sp.simplify(ratfunc_to_sympy(tau_factor(J, 0, 0)) - (1 / q - u) / (1 - u / q)) == 0


def test_tau_q3_has_double_pole_at_zero():
    Q = triple(jordan_quiver())
    tau = sp.simplify(ratfunc_to_sympy(tau_factor(Q, 0, 0)))
    lead = sp.limit(tau * u ** 2, u, 0)
    assert lead != 0 and lead.is_finite


def test_tau_unitarity():
    for Q in (jordan_quiver(), triple(jordan_quiver()), triple(a2_base())):
        for i in Q.vertices:
            for j in Q.vertices:
                a = ratfunc_to_sympy(tau_factor(Q, i, j))
                b = ratfunc_to_sympy(tau_factor(Q, j, i)).subs(u, 1 / u)
                assert sp.simplify(a * b - 1) == 0


def test_mu_factor():
    p = sp.Symbol("p")
    assert sp.simplify(ratfunc_to_sympy(mu_factor()) - (1 - p ** 2 / u) / (1 - q ** 2 / u)) == 0


def test_dimension_vectors():
    a, b = dimvec({0: 1, 1: 2}), dimvec({0: 2})
    assert dim_add(a, b) == dimvec({0: 3, 1: 2})
    assert dim_sub(dim_add(a, b), b) == a
    assert len(list(dim_splits(dimvec({0: 2, 1: 1})))) == 6
    with pytest.raises(ValueError):
        dimvec({0: -1})
