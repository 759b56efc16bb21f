"""Laurent monomials and polynomials over Q.

A monomial is a tuple of ``(name, exponent)`` pairs, sorted by :func:`var_key`,
with no zero exponents.  The empty tuple is the unit monomial.  Variables attached
to a quiver vertex are named ``prefix[vertex,slot]`` (``z[0,2]``, ``x[1,1]``);
every other name is a parameter symbol.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

ONE = ()

_BLOCK_RE = re.compile(r"^([A-Za-z_]\w*)\[([^,\]]+),(\d+)\]$")


def _vertex_key(v):
    try:
        return (0, int(v), "")
    except ValueError:
        return (1, 0, v)


@lru_cache(maxsize=None)
def var_key(name):
    """Canonical order: block variables by (vertex, slot, prefix), then parameters."""
    m = _BLOCK_RE.match(name)
    if m:
        prefix, vertex, slot = m.groups()
        return (0, _vertex_key(vertex), int(slot), prefix)
    return (1, (0, 0, ""), 0, name)


@lru_cache(maxsize=None)
def parse_block_var(name):
    """Return ``(prefix, vertex, slot)`` for a block variable, else ``None``."""
    m = _BLOCK_RE.match(name)
    if not m:
        return None
    prefix, vertex, slot = m.groups()
    try:
        vertex = int(vertex)
    except ValueError:
        pass
    return prefix, vertex, int(slot)


def block_var(prefix, vertex, slot):
    return f"{prefix}[{vertex},{slot}]"


def _item_key(t):
    return var_key(t[0])


def mono(**exps):
    return mono_from_dict(exps)


def mono_from_dict(d):
    return tuple(sorted(((k, e) for k, e in d.items() if e), key=lambda t: var_key(t[0])))


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return _mono_mul(a, b)


@lru_cache(maxsize=1 << 20)
def _mono_mul(a, b):
    d = dict(a)
    for k, e in b:
        s = d.get(k, 0) + e
        if s:
            d[k] = s
        else:
            del d[k]
    return tuple(sorted(d.items(), key=_item_key))


def mono_inv(a):
    return tuple((k, -e) for k, e in a)


def mono_pow(a, n):
    if n == 0:
        return ONE
    return tuple((k, e * n) for k, e in a)


def mono_div(a, b):
    return mono_mul(a, mono_inv(b))


def mono_exp(a, name):
    for k, e in a:
        if k == name:
            return e
    return 0


def mono_degree(a, names):
    return sum(e for k, e in a if k in names)


def mono_split(a, pred):
    """Split a monomial into the factors whose names satisfy ``pred`` and the rest."""
    yes = tuple(t for t in a if pred(t[0]))
    no = tuple(t for t in a if not pred(t[0]))
    return yes, no


def mono_str(a):
    if not a:
        return "1"
    parts = []
    for k, e in a:
        parts.append(k if e == 1 else f"{k}^{e}")
    return "*".join(parts)


def mono_substitute(a, bindings):
    """Image of ``a`` under ``name -> monomial`` bindings."""
    out = ONE
    rest = []
    for k, e in a:
        if k in bindings:
            out = mono_mul(out, mono_pow(bindings[k], e))
        else:
            rest.append((k, e))
    return mono_mul(tuple(rest), out)


def _frac(c):
    """Exact coefficient; integral values are kept as ``int`` for speed."""
    if isinstance(c, int):
        return c
    c = c if isinstance(c, Fraction) else Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    """Finite sum of monomials with nonzero rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {m: _frac(c) for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        for m, c in terms.items():
            if type(c) is Fraction and c.denominator == 1:
                terms[m] = c.numerator
        p.terms = terms
        return p

    @classmethod
    def const(cls, c):
        return cls._raw({ONE: _frac(c)} if c else {})

    @classmethod
    def monomial(cls, m, c=1):
        return cls._raw({m: _frac(c)} if c else {})

    @classmethod
    def var(cls, name, exp=1):
        return cls._raw({((name, exp),) if exp else ONE: 1})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def const_value(self):
        return self.terms.get(ONE, 0)

    def __len__(self):
        return len(self.terms)

    def variables(self):
        out = set()
        for m in self.terms:
            out.update(k for k, _ in m)
        return out

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c, m=ONE):
        c = _frac(c)
        if not c:
            return LaurentPoly()
        if not m:
            return LaurentPoly._raw({k: v * c for k, v in self.terms.items()})
        return LaurentPoly._raw({mono_mul(k, m): v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        if len(a) * len(b) > 64:
            fast = _dense_mul(a, b)
            if fast is not None:
                return fast
        d = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = d.get(m, 0) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return LaurentPoly._raw(d)

    __rmul__ = __mul__

    def mul_truncated(self, other, degree, max_degree):
        """Product keeping only monomials with ``degree(m) <= max_degree``."""
        bdeg = {}
        for m, c in other.terms.items():
            bdeg.setdefault(degree(m), []).append((m, c))
        bkeys = sorted(bdeg)
        d = {}
        for m1, c1 in self.terms.items():
            d1 = degree(m1)
            for dk in bkeys:
                if d1 + dk > max_degree:
                    break
                for m2, c2 in bdeg[dk]:
                    m = mono_mul(m1, m2)
                    s = d.get(m, 0) + c1 * c2
                    if s:
                        d[m] = s
                    else:
                        d.pop(m, None)
        return LaurentPoly._raw(d)

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (m, c), = self.terms.items()
            return LaurentPoly.monomial(mono_pow(m, n), c ** n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def filter(self, pred):
        return LaurentPoly._raw({m: c for m, c in self.terms.items() if pred(m)})

    def substitute(self, bindings):
        d = {}
        for m, c in self.terms.items():
            m2 = mono_substitute(m, bindings)
            s = d.get(m2, 0) + c
            if s:
                d[m2] = s
            else:
                d.pop(m2, None)
        return LaurentPoly._raw(d)

    def rename(self, mapping):
        """Rename variables (a bijection on names)."""
        d = {}
        for m, c in self.terms.items():
            m2 = mono_from_dict({mapping.get(k, k): e for k, e in m})
            d[m2] = d.get(m2, 0) + c
        return LaurentPoly({k: v for k, v in d.items() if v})

    def diff(self, name):
        d = {}
        for m, c in self.terms.items():
            e = mono_exp(m, name)
            if e:
                m2 = mono_mul(m, ((name, -1),))
                d[m2] = d.get(m2, 0) + c * e
        return LaurentPoly({k: v for k, v in d.items() if v})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: [(var_key(k), e) for k, e in t[0]])

    def min_degree(self, degree):
        return min((degree(m) for m in self.terms), default=None)

    def max_degree(self, degree):
        return max((degree(m) for m in self.terms), default=None)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)})"


def format_coeff_term(c, m):
    ms = mono_str(m)
    if not m:
        return str(c)
    if c == 1:
        return ms
    if c == -1:
        return "-" + ms
    return f"{c}*{ms}"


def format_poly(p):
    if p.is_zero():
        return "0"
    out = ""
    for i, (m, c) in enumerate(p.sorted_terms()):
        s = format_coeff_term(c, m)
        if i == 0:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


_BITS = 24
_OFF = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1


class _Packed:
    """Monomials packed into one int, exponent ``e`` of the ``i``-th variable stored as
    the digit ``e + _OFF`` in base ``2**_BITS``.  Used only inside hot loops."""

    def __init__(self, *monomial_sets):
        names, top = set(), 0
        for ms in monomial_sets:
            for m in ms:
                for k, e in m:
                    names.add(k)
                    top = max(top, abs(e))
        self.names = sorted(names, key=var_key)
        self.shift = {k: _BITS * i for i, k in enumerate(self.names)}
        self.base = sum(_OFF << s for s in self.shift.values())
        self.top = top

    def fits(self, factor=2):
        return self.top * factor < _OFF

    def pack(self, m):
        shift = self.shift
        return self.base + sum(e << shift[k] for k, e in m)

    def shift_of(self, m):
        """Packed offset that multiplies by ``m`` when added."""
        return self.pack(m) - self.base

    def digit(self, x, name):
        return ((x >> self.shift[name]) & _MASK) - _OFF

    def mono(self, x):
        out = []
        for k in self.names:
            d = (x & _MASK) - _OFF
            if d:
                out.append((k, d))
            x >>= _BITS
        return tuple(out)


def _dense_mul(a, b):
    P = _Packed(a, b)
    if not P.fits():
        return None
    base = P.base
    bv = [(P.pack(m) - base, c) for m, c in b.items()]
    d = {}
    get = d.get
    for m1, c1 in a.items():
        x1 = P.pack(m1)
        for x2, c2 in bv:
            k = x1 + x2
            d[k] = get(k, 0) + c1 * c2
    return LaurentPoly._raw({P.mono(k): c for k, c in d.items() if c})


def _divide_packed(P, terms, m):
    """Packed ``terms / (1 - m)`` or ``None`` when the division is not exact."""
    w = [(k, e) for k, e in m]
    step = sum(e * e for _, e in w)
    wp = P.shift_of(m)
    buckets = {}
    for x, c in terms.items():
        lv = sum(e * P.digit(x, k) for k, e in w)
        buckets.setdefault(lv, {})[x] = c
    top = max(buckets)
    quotient = {}
    while buckets:
        lv = min(buckets)
        if lv > top - step:
            return None
        layer = buckets.pop(lv)
        nxt = buckets.setdefault(lv + step, {})
        for x, c in layer.items():
            quotient[x] = quotient.get(x, 0) + c
            x2 = x + wp
            s = nxt.get(x2, 0) + c
            if s:
                nxt[x2] = s
            else:
                nxt.pop(x2, None)
        if not nxt:
            del buckets[lv + step]
    return {x: c for x, c in quotient.items() if c}


def divide_binomials(num, factors):
    """Cancel as many factors ``(1 - m)**k`` from ``num`` as divide it exactly.

    ``factors`` is a list of ``(m, k)``; returns ``(quotient, {m: k_left})``.
    """
    left = {}
    if num.is_zero():
        return num, left
    P = _Packed(num.terms, [m for m, _ in factors])
    if not P.fits():
        raise ValueError("exponents too large for exact division")
    terms = {P.pack(mo): c for mo, c in num.terms.items()}
    for m, k in factors:
        if not m:
            raise ValueError("cannot divide by 1 - 1")
        while k:
            q = _divide_packed(P, terms, m)
            if q is None:
                break
            terms = q
            k -= 1
        if k:
            left[m] = k
    return LaurentPoly._raw({P.mono(x): c for x, c in terms.items()}), left


def exact_divide_binomial(num, m):
    """Return ``num / (1 - m)`` if the division is exact in the Laurent ring, else ``None``.

    The quotient is built level by level along the grading ``exp . exp(m)``, in which
    ``m`` has strictly positive weight.
    """
    if not m:
        raise ValueError("cannot divide by 1 - 1")
    q, left = divide_binomials(num, [(m, 1)])
    return None if left else q
