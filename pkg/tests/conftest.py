import pytest

from khashuffle import ExtendedElement, GEQ, ParseContext, QuiverModel, ShuffleElement
from khashuffle import dimvec, jordan_quiver, parse_expr, triple
from khashuffle.quiver import Edge


def make_element(quiver, dim, expr, side=GEQ):
    d = dimvec(dim)
    f = parse_expr(expr, ParseContext(symbols=set(quiver.parameters), dim=d))
    return ExtendedElement.from_shuffle(ShuffleElement(d, f), side)


def shuffle_el(quiver, dim, expr):
    d = dimvec(dim)
    return ShuffleElement(d, parse_expr(expr, ParseContext(symbols=set(quiver.parameters), dim=d)))


def mono1(k):
    """``z[0,1]^k`` as parser text."""
    return f"z[0,1]^({k})"


def a2_base():
    return QuiverModel([0, 1], [Edge("e", 0, 1)], {"e": {"q": 1}})


@pytest.fixture(scope="session")
def J():
    return jordan_quiver()


@pytest.fixture(scope="session")
def Q3():
    return triple(jordan_quiver())


@pytest.fixture(scope="session")
def A2():
    return triple(a2_base())
