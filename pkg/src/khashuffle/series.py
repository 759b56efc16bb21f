"""Region-directed truncated expansion of binomial-denominator rational functions."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import NonExpandableFactor
from .laurent import ONE, LaurentPoly, mono_degree, mono_inv, mono_pow, parse_block_var
from .ratfunc import RatFunc


def ratio_degree(m, small):
    return mono_degree(m, small)


def _is_scalar_factor(m):
    return not any(parse_block_var(k) for k, _ in m)


def geometric(m, mult, degree, max_degree):
    """Truncated ``(1 - m)**(-mult)``; ``degree(m)`` must be positive."""
    dm = degree(m)
    out = {}
    k = 0
    while k * dm <= max_degree:
        out[mono_pow(m, k)] = comb(k + mult - 1, mult - 1)
        k += 1
    return LaurentPoly(out)


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact up to SMALL-degree ``order``; terms above it have been dropped.

    ``value`` is a Laurent polynomial in the variables, possibly over a
    denominator made only of parameter binomials.
    """

    value: RatFunc
    small: frozenset
    order: int

    def degree(self, m):
        return mono_degree(m, self.small)

    def truncate(self, order):
        order = min(order, self.order)
        num = self.value.num.filter(lambda m: self.degree(m) <= order)
        return TruncatedSeries(RatFunc._raw(num, dict(self.value.den)), self.small, order)

    def min_degree(self):
        d = self.value.num.min_degree(self.degree)
        return 0 if d is None else d

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(self.value + other.value, self.small, order).truncate(order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.value * other, self.small, self.order)
        order = min(self.order + other.min_degree(), other.order + self.min_degree())
        num = self.value.num.mul_truncated(other.value.num, self.degree, order)
        den = dict(self.value.den)
        for m, k in other.value.den.items():
            den[m] = den.get(m, 0) + k
        return TruncatedSeries(RatFunc._raw(num, den), self.small, order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.truncate(order).value == other.truncate(order).value

    __hash__ = None


def expand_series(f, small, order):
    """Expand ``f`` in the region where SMALL variables are small, to SMALL-degree ``order``.

    Each denominator factor ``1 - M`` must have nonzero SMALL-degree; factors of
    negative degree are rewritten as ``-M^-1 / (1 - M^-1)``.  Factors without any
    vertex variable are scalars and stay in the denominator.
    """
    small = frozenset(small)
    f = RatFunc.coerce(f)

    def degree(m):
        return mono_degree(m, small)

    num = f.num
    scalar_den = {}
    series_factors = []
    for m, k in f.den.items():
        d = degree(m)
        if d == 0:
            if _is_scalar_factor(m):
                scalar_den[m] = k
                continue
            raise NonExpandableFactor(f"factor 1 - {m} has ratio-degree 0 in the region")
        if d < 0:
            num = num.scale((-1) ** k, mono_pow(m, -k))
            m = mono_inv(m)
        series_factors.append((m, k))
    lo = num.min_degree(degree)
    if lo is None:
        return TruncatedSeries(RatFunc.const(0), small, order)
    budget = order - lo
    acc = LaurentPoly.const(1)
    for m, k in series_factors:
        acc = acc.mul_truncated(geometric(m, k, degree, budget), degree, budget)
    out = num.mul_truncated(acc, degree, order)
    return TruncatedSeries(RatFunc._raw(out, scalar_den), small, order)


def series_unit(small, order):
    return TruncatedSeries(RatFunc.const(1), frozenset(small), order)


__all__ = ["TruncatedSeries", "expand_series", "geometric", "ratio_degree", "series_unit", "ONE"]
