"""Rational functions whose denominators are products of binomials ``1 - M``."""
from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .errors import DenominatorVanishes, NonBinomialDenominator, PoleAtPEqualsQ
from .laurent import (
    ONE,
    LaurentPoly,
    divide_binomials,
    exact_divide_binomial,
    format_poly,
    mono_from_dict,
    mono_inv,
    mono_mul,
    mono_pow,
    mono_str,
    mono_substitute,
    parse_block_var,
    var_key,
)


def binomial_power(m, k):
    """Expanded ``(1 - m)**k``."""
    out = LaurentPoly.const(1)
    base = LaurentPoly({ONE: 1, m: -1})
    for _ in range(k):
        out = out * base
    return out


def canonical_factor(m):
    """Orient ``1 - m`` so that its leading variable has a positive exponent.

    Returns ``(m', prefactor)`` with ``1 - m == prefactor * (1 - m')``, where the
    prefactor is ``(coefficient, monomial)``.
    """
    if not m:
        raise DenominatorVanishes("denominator factor 1 - 1")
    if m[0][1] > 0:
        return m, (1, ONE)
    return mono_inv(m), (-1, m)


class RatFunc:
    """``numerator / prod (1 - M)**k`` with exact rational coefficients.

    Values are treated as immutable.  Equality is decided by cross-multiplication,
    so two representations of the same function compare equal even before
    :meth:`simplify`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None):
        if num is None:
            num = LaurentPoly()
        elif not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        factors = {}
        if den:
            items = den.items() if isinstance(den, dict) else den
            for m, k in items:
                if k <= 0:
                    raise ValueError("factor multiplicity must be positive")
                m2, (c, pre) = canonical_factor(m)
                if pre:
                    # 1/(1-m)^k = (-m^-1)^k / (1-m^-1)^k
                    num = num.scale(Fraction(c) ** k, mono_pow(mono_inv(pre), k))
                factors[m2] = factors.get(m2, 0) + k
        if num.is_zero():
            factors = {}
        self.num = num
        self.den = factors

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den if not num.is_zero() else {}
        return r

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls._raw(LaurentPoly.const(c), {})

    @classmethod
    def var(cls, name, exp=1):
        return cls._raw(LaurentPoly.var(name, exp), {})

    @classmethod
    def monomial(cls, m, c=1):
        return cls._raw(LaurentPoly.monomial(m, c), {})

    @classmethod
    def binomial(cls, m):
        """``1 - m``."""
        return cls._raw(LaurentPoly({ONE: 1, m: -1}), {})

    @classmethod
    def inverse_binomial(cls, m, k=1):
        """``1 / (1 - m)**k``."""
        return cls(LaurentPoly.const(1), {m: k})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls._raw(x, {})
        return cls.const(x)

    # -- queries ------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return not self.den

    def variables(self):
        out = self.num.variables()
        for m in self.den:
            out.update(k for k, _ in m)
        return out

    def denominator_variables(self):
        out = set()
        for m in self.den:
            out.update(k for k, _ in m)
        return out

    def has_block_denominator(self):
        """True if some denominator factor involves a vertex variable."""
        return any(parse_block_var(k) for m in self.den for k, _ in m)

    def const_value(self):
        """The rational value of a constant function, or ``None``."""
        if self.den or not self.num.is_const():
            return None
        return self.num.const_value()

    # -- arithmetic ---------------------------------------------------------
    def _common(self, other):
        den = dict(self.den)
        for m, k in other.den.items():
            if den.get(m, 0) < k:
                den[m] = k
        a = self.num
        for m, k in den.items():
            extra = k - self.den.get(m, 0)
            if extra:
                a = a * binomial_power(m, extra)
        b = other.num
        for m, k in den.items():
            extra = k - other.den.get(m, 0)
            if extra:
                b = b * binomial_power(m, extra)
        return a, b, den

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc._raw(self.num + other.num, dict(self.den))
        a, b, den = self._common(other)
        return RatFunc._raw(a + b, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, LaurentPoly):
                return RatFunc._raw(self.num * other, dict(self.den))
            return RatFunc._raw(self.num.scale(other), dict(self.den))
        den = dict(self.den)
        for m, k in other.den.items():
            den[m] = den.get(m, 0) + k
        return RatFunc._raw(self.num * other.num, den)

    __rmul__ = __mul__

    def scale(self, c, m=ONE):
        return RatFunc._raw(self.num.scale(c, m), dict(self.den))

    def inverse(self):
        """Reciprocal; the numerator must be a monomial or a binomial ``c(m1 - m2)``."""
        terms = list(self.num.terms.items())
        base = LaurentPoly.const(1)
        for m, k in self.den.items():
            base = base * binomial_power(m, k)
        if len(terms) == 1:
            (m, c), = terms
            return RatFunc._raw(base.scale(Fraction(1) / c, mono_inv(m)), {})
        if len(terms) == 2 and terms[0][1] == -terms[1][1]:
            (m1, c1), (m2, _) = terms
            ratio = mono_mul(m2, mono_inv(m1))
            return RatFunc(base.scale(Fraction(1) / c1, mono_inv(m1)), {ratio: 1})
        raise NonBinomialDenominator(
            f"cannot invert {format_poly(self.num)}: not a monomial times a binomial 1 - M")

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, LaurentPoly)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, LaurentPoly, int, Fraction)):
            return NotImplemented
        return (self - RatFunc.coerce(other)).num.is_zero()

    __hash__ = None

    # -- transformations ----------------------------------------------------
    def simplify(self):
        """Cancel every denominator factor that divides the numerator exactly."""
        if not self.den:
            return self
        num, den = divide_binomials(self.num, sorted(self.den.items(), key=lambda t: _factor_key(t[0])))
        return RatFunc._raw(*_cancel_powers(num, den))

    def substitute(self, bindings):
        """Apply ``name -> monomial`` bindings, then simplify."""
        num = self.num.substitute(bindings)
        fac = {}
        for m, k in self.den.items():
            m2 = mono_substitute(m, bindings)
            if not m2:
                raise DenominatorVanishes(f"factor 1 - {mono_str(m)} vanishes under substitution")
            fac[m2] = fac.get(m2, 0) + k
        return RatFunc(num, fac).simplify()

    def rename(self, mapping):
        num = self.num.rename(mapping)
        fac = {}
        for m, k in self.den.items():
            m2 = mono_from_dict({mapping.get(v, v): e for v, e in m})
            fac[m2] = fac.get(m2, 0) + k
        return RatFunc(num, fac)

    def diff(self, name):
        """Formal partial derivative."""
        # d/dz (1-M)^-k = k * (dM/dz) / (1-M)^(k+1), with dM/dz = e*M/z
        out = RatFunc._raw(self.num.diff(name), dict(self.den))
        for m, k in self.den.items():
            e = dict(m).get(name, 0)
            if not e:
                continue
            dm = mono_mul(m, ((name, -1),))
            den = dict(self.den)
            den[m] = den[m] + 1
            out = out + RatFunc._raw(self.num.scale(k * e, dm), den)
        return out

    def limit_p_to_q(self, p="p", q="q"):
        """Replace ``p`` by ``q``, removing a removable singularity at ``p = q`` first."""
        s = "__s"
        f = self.simplify().substitute({p: mono_from_dict({q: 1, s: 1})})
        num = f.num
        den = {}
        order = 0
        scale = Fraction(1)
        for m, k in f.den.items():
            if len(m) == 1 and m[0][0] == s:
                b = m[0][1]
                order += k
                scale *= Fraction(b) ** k
            else:
                den[m] = k
        s_mono = ((s, 1),)
        for _ in range(order):
            num2 = exact_divide_binomial(num, s_mono)
            if num2 is None:
                raise PoleAtPEqualsQ(f"pole of order > numerator zero order at {p} = {q}")
            num = num2
        out = RatFunc(num.scale(1 / scale), den)
        return out.substitute({s: ONE})

    def evaluate(self, values):
        """Evaluate at rational points given as ``{name: Fraction}``."""
        def ev(m):
            r = Fraction(1)
            for k, e in m:
                r *= Fraction(values[k]) ** e
            return r
        n = sum((c * ev(m) for m, c in self.num.terms.items()), Fraction(0))
        d = Fraction(1)
        for m, k in self.den.items():
            d *= (1 - ev(m)) ** k
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return n / d

    # -- rendering ----------------------------------------------------------
    def factors_sorted(self):
        return sorted(self.den.items(), key=lambda t: _factor_key(t[0]))

    def __str__(self):
        num = format_poly(self.num)
        if not self.den:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        parts = []
        for m, k in self.factors_sorted():
            f = f"(1 - {mono_str(m)})"
            parts.append(f if k == 1 else f"{f}^{k}")
        den = parts[0] if len(parts) == 1 else "(" + "*".join(parts) + ")"
        return f"{num} / {den}"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self):
        return {
            "numerator": [[_frac_str(c), {k: e for k, e in m}]
                          for m, c in self.num.sorted_terms()],
            "denominator": [[{k: e for k, e in m}, k_] for m, k_ in self.factors_sorted()],
        }

    @classmethod
    def from_json(cls, data):
        num = LaurentPoly({mono_from_dict(m): Fraction(c) for c, m in data["numerator"]})
        den = {mono_from_dict(m): int(k) for m, k in data["denominator"]}
        return cls(num, den)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _cancel_powers(num, den):
    """Reduce ``1 - m0^g`` to ``1 - m0^d`` when ``num`` contains the quotient."""
    changed = True
    while changed:
        changed = False
        for m in sorted(den, key=_factor_key):
            g = gcd(*(e for _, e in m))
            if g < 2:
                continue
            root = tuple((k, e // g) for k, e in m)
            for d in (d for d in range(1, g) if g % d == 0):
                small = mono_pow(root, d)
                q = exact_divide_binomial(num * LaurentPoly({ONE: 1, small: -1}), m)
                if q is None:
                    continue
                num = q
                den[m] -= 1
                if not den[m]:
                    del den[m]
                den[small] = den.get(small, 0) + 1
                changed = True
                break
            if changed:
                break
    return num, den


def _frac_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _factor_key(m):
    return [(var_key(k), e) for k, e in m]


def simplify(f):
    return f.simplify()


def substitute(f, bindings):
    return f.substitute(bindings)


def limit_p_to_q(f):
    return f.limit_p_to_q()
