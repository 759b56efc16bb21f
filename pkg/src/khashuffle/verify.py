"""Checks of the bialgebra, counit and antipode identities at finite truncation."""
from __future__ import annotations

from dataclasses import dataclass

from .extended import (
    ExtendedElement,
    antipode,
    apply_coproduct,
    counit,
    counit_slot,
    ext_coproduct,
    ext_product,
    multiply_slots,
    tensor_mul,
)
from .tensor import LEQ


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __bool__(self):
        return self.passed


def _result(name, diff):
    term = diff.first_term()
    return CheckResult(name, term is None, term or "")


def _degree_span(u):
    """Largest absolute total z-degree among the terms of an element."""
    best = 0
    for f in u.terms.values():
        for m in f.num.terms:
            best = max(best, abs(sum(e for _, e in m)))
    return best


def check_multiplicativity(quiver, x, y, order):
    """Delta(x * y) == Delta(x) * Delta(y) on left degrees <= order."""
    lhs = ext_coproduct(quiver, ext_product(quiver, x, y), order)
    dx, dy = ext_coproduct(quiver, x, order), ext_coproduct(quiver, y, order)
    # the product is exact to min(K + lo) so raise K by the most negative left degree
    lows = [v for D in (dx, dy) for v in (D.lo() or [])]
    margin = max([0] + [-v for v in lows])
    if margin:
        dx = ext_coproduct(quiver, x, order + margin)
        dy = ext_coproduct(quiver, y, order + margin)
    rhs = tensor_mul(quiver, dx, dy)
    if rhs.order is not None and rhs.order < order:
        raise AssertionError("product tensor is not exact up to the requested order")
    return _result(f"multiplicativity N={order}", lhs.difference(rhs, order))


def check_coassociativity(quiver, u, order):
    D = ext_coproduct(quiver, u, order)
    left = apply_coproduct(quiver, D, 0, order)
    right = apply_coproduct(quiver, D, 1, order)
    return _result(f"coassociativity N={order}", left.difference(right, order))


def check_counit(quiver, u, order):
    D = ext_coproduct(quiver, u, order)
    out = []
    for slot in (0, 1):
        got = counit_slot(D, slot)
        out.append(_result(f"counit slot {slot} N={order}", got.difference(u)))
    return CheckResult(f"counit N={order}", all(out), "; ".join(r.detail for r in out if not r))


def check_antipode(quiver, u, order):
    """m(S (x) id) Delta(u) == eps(u) 1 == m(id (x) S) Delta(u) up to h-index ``order``."""
    h_right = u.side == LEQ
    D = ext_coproduct(quiver, u, order + _degree_span(u) + 2, h_right=h_right)
    S = lambda v: antipode(quiver, v, order)  # noqa: E731
    target = ExtendedElement(u.side, ExtendedElement.unit(u.side).terms, None, h_right)
    target = target.scale(counit(u))
    out = []
    for name, kw in (("S(x)id", {"left_map": S}), ("id(x)S", {"right_map": S})):
        got = multiply_slots(quiver, D, order=order, **kw)
        out.append(_result(f"antipode {name} N={order}", got.difference(target)))
    return CheckResult(f"antipode N={order}", all(out), "; ".join(r.detail for r in out if not r))


def bialgebra_suite(quiver, elements, orders=(4, 8)):
    """All pairwise multiplicativity checks plus coassociativity and counit per element."""
    results = []
    for n in orders:
        for x in elements:
            results.append(check_coassociativity(quiver, x, n))
            results.append(check_counit(quiver, x, n))
        for x in elements:
            for y in elements:
                results.append(check_multiplicativity(quiver, x, y, n))
    return results


__all__ = [
    "CheckResult", "bialgebra_suite", "check_antipode", "check_coassociativity",
    "check_counit", "check_multiplicativity",
]
