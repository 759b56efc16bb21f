"""Residue pairing between the lower and upper extended algebras.

Shuffle parts pair by an iterated contour integral over the unit torus,
taken in the region ``|q| < 1 < |p|`` with every other parameter and every
variable on the unit circle, followed by the limit ``p -> q``.  The
h-generators pair through ``(h^-_{i'}(z), h^+_i(w)) = tau_{i'i}(w/z)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .errors import (
    AmbiguousPoleOrder, DegenerateWeight, DimensionMismatch, KHAError, PoleOnContour,
)
from .laurent import ONE, LaurentPoly, block_var, mono_exp, mono_inv, mono_mul, mono_pow
from .quiver import inverse_zeta_factor
from .ratfunc import RatFunc
from .shuffle import block_vars
from .tensor import GEQ, LEQ, _tau_valuation, h_coproduct, tau_coefficients

INSIDE, OUTSIDE = "inside", "outside"


# -- kernel ----------------------------------------------------------------------

def psi_kernel(quiver, dim, prefix="z"):
    """``1 / (prod zeta~ * prod mu)`` over all ordered pairs, diagonal included."""
    names = [(block_var(prefix, v, j), v) for v, n in dim for j in range(1, n + 1)]
    out = RatFunc.const(1)
    for a, ia in names:
        for b, ib in names:
            if a == b:
                for w in quiver.arrows(ia, ia):
                    if not w:
                        raise DegenerateWeight(f"loop at vertex {ia} has trivial torus weight")
                    out = out * RatFunc.inverse_binomial(mono_inv(w))
                out = out * RatFunc(LaurentPoly({ONE: 1, (("q", 2),): -1}), {(("p", 2),): 1})
                continue
            ratio = mono_mul(((a, 1),), ((b, -1),))
            out = out * inverse_zeta_factor(quiver, ia, ib, ratio)
            if ia == ib:
                inv = mono_inv(ratio)
                out = out * RatFunc(
                    LaurentPoly({ONE: 1, mono_mul((("q", 2),), inv): -1}),
                    {mono_mul((("p", 2),), inv): 1})
    return out


# -- residues --------------------------------------------------------------------

def classify_pole(location, q="q", p="p"):
    """Position of a pole ``z = q^a p^b * (unit modulus)`` relative to ``|z| = 1``."""
    a, b = mono_exp(location, q), mono_exp(location, p)
    if (a > 0 and b <= 0) or (a >= 0 and b < 0):
        return INSIDE
    if (a < 0 and b >= 0) or (a <= 0 and b > 0):
        return OUTSIDE
    if a == 0 and b == 0:
        raise PoleOnContour(f"pole at {location} lies on the unit circle")
    raise AmbiguousPoleOrder(f"pole at {location} is inside or outside depending on |q|, |p|")


def _residue_at_zero(f, z):
    """Constant term in ``z`` of the expansion of ``f`` around ``z = 0``."""
    num = f.num
    keep, expand = {}, []
    for m, k in f.den.items():
        e = mono_exp(m, z)
        if e == 0:
            keep[m] = k
        elif e > 0:
            expand.append((m, k))
        else:
            # 1/(1-M)^k = (-M^-1)^k / (1-M^-1)^k
            num = num.scale((-1) ** k, mono_pow(mono_inv(m), k))
            expand.append((mono_inv(m), k))

    def deg(mono_):
        return mono_exp(mono_, z)

    lo = num.min_degree(deg)
    if lo is None or lo > 0:
        return RatFunc.const(0)
    acc = num
    for m, k in expand:
        step = deg(m)
        series = {}
        j = 0
        while j * step <= -lo:
            c = 1
            for t in range(1, k):
                c = c * (j + t) // t
            series[mono_pow(m, j)] = c
            j += 1
        acc = acc.mul_truncated(LaurentPoly(series), deg, 0)
    const = acc.filter(lambda mono_: deg(mono_) == 0)
    return RatFunc(const, keep)


def _residue_at(f, z, location, factors):
    """Residue of ``f / z`` at ``z = location``; ``factors`` are the den entries vanishing there."""
    den = dict(f.den)
    num = f.num
    order = 0
    for m, k, e in factors:
        del den[m]
        order += k
        if e > 0:
            # 1 - z/L = -(z - L)/L
            num = num.scale((-1) ** k, mono_pow(location, k))
        else:
            # 1 - L/z = (z - L)/z
            num = num.scale(1, ((z, k),))
    h = RatFunc(num.scale(1, ((z, -1),)), den)
    for _ in range(order - 1):
        h = h.diff(z)
    return h.substitute({z: location}).scale(Fraction(1, factorial(order - 1)))


def integrate_variable(f, z):
    """``(1/2 pi i) \\oint f dz / z`` over ``|z| = 1``."""
    f = RatFunc.coerce(f).simplify()
    poles = {}
    for m, k in f.den.items():
        e = mono_exp(m, z)
        if e == 0:
            continue
        if abs(e) != 1:
            raise KHAError(f"denominator factor 1 - {m} is not linear in {z}")
        rest = tuple(t for t in m if t[0] != z)
        location = mono_pow(rest, -e)
        poles.setdefault(location, []).append((m, k, e))
    total = _residue_at_zero(f, z)
    for location, facs in poles.items():
        if classify_pole(location) == INSIDE:
            total = total + _residue_at(f, z, location, facs)
    return total.simplify()


def contour_integrate(f, variables):
    for z in variables:
        f = integrate_variable(f, z)
    return f


# -- shuffle pairing -----------------------------------------------------------------

def pair_functions(quiver, f, g, dim, limit=True, variable_order=None):
    """Pairing of ``f`` in the lower and ``g`` in the upper algebra, both on block ``z``.

    ``variable_order`` permutes the iterated integration; the value must not depend on it.
    """
    if not dim:
        out = RatFunc.coerce(f) * g
    else:
        integrand = RatFunc.coerce(f) * g * psi_kernel(quiver, dim)
        names = block_vars(dim)
        if variable_order is not None:
            if sorted(variable_order) != sorted(names):
                raise DimensionMismatch("variable order must list every block variable once")
            names = list(variable_order)
        out = contour_integrate(integrand, names)
        norm = 1
        for _, n in dim:
            norm *= factorial(n)
        out = out.scale(Fraction(1, norm))
    return out.limit_p_to_q() if limit else out


def pair_shuffle(quiver, x, y):
    """Pairing of shuffle elements ``x`` (lower) and ``y`` (upper)."""
    if x.dim != y.dim:
        return RatFunc.const(0)
    return pair_functions(quiver, x.value, y.value, x.dim)


# -- h-generating functions ----------------------------------------------------------

def _h_factors(h):
    out = []
    for (v, n), e in h:
        if e < 0:
            raise KHAError("pairing of inverse h_{i,0} is not supported")
        out.extend([(v, n)] * e)
    return out


def _tau_series_product(quiver, factors, targets):
    """Coefficient extraction from a product of expanded ``tau`` series.

    Each factor is ``(i, j, keys, var, sign)``: the series
    ``tau_{ij}(u) = sum_r c_r u^-r`` contributes ``r`` to every index in ``keys``
    and multiplies by ``var^(sign*r)`` when ``var`` is a block variable.  Returns
    the sum over all choices whose index totals equal ``targets``.
    """
    vals = [_tau_valuation(quiver, i, j, "infinity") for i, j, _, _, _ in factors]
    need = {}
    for (_, _, keys, _, _), s in zip(factors, vals):
        for key in keys:
            need[key] = need.get(key, 0) + s
    for key in targets:
        if need.get(key, 0) > targets[key]:
            return LaurentPoly()
    state = {tuple(0 for _ in targets): LaurentPoly.const(1)}
    order = list(targets)
    remaining = dict(need)
    for (i, j, keys, var, sign), s in zip(factors, vals):
        for key in keys:
            remaining[key] -= s
        nxt = {}
        for used, poly in state.items():
            cap = min(targets[key] - used[order.index(key)] - remaining[key] for key in keys)
            if cap < s:
                continue
            coeffs, _ = tau_coefficients(quiver, i, j, cap, "infinity")
            for r, c in coeffs.items():
                if r > cap:
                    continue
                u = list(used)
                for key in keys:
                    u[order.index(key)] += r
                mono_ = ((var, sign * r),) if var and r else ONE
                term = poly * c.scale(1, mono_)
                u = tuple(u)
                nxt[u] = nxt[u] + term if u in nxt else term
        state = nxt
    return state.get(tuple(targets[k] for k in order), LaurentPoly())


def h_pairing_factor_upper(quiver, hminus, hplus, dim):
    """``K(z) = sum_n (H^-, H^+ prod_j h^+_{n_j}) prod_j z_j^-n_j`` on the block of ``dim``."""
    zs = [(block_var("z", v, j), v) for v, n in dim for j in range(1, n + 1)]
    lows, ups = _h_factors(hminus), _h_factors(hplus)
    targets = {("k", a): n for a, (_, n) in enumerate(lows)}
    targets.update({("l", b): n for b, (_, n) in enumerate(ups)})
    factors = []
    for a, (ia, _) in enumerate(lows):
        for b, (ib, _) in enumerate(ups):
            factors.append((ia, ib, (("k", a), ("l", b)), None, 0))
        for z, iz in zs:
            factors.append((ia, iz, (("k", a),), z, -1))
    return RatFunc.coerce(_tau_series_product(quiver, factors, targets))


def h_pairing_factor_lower(quiver, hplus, dim):
    """``G(z) = sum_n (prod_j h^-_{n_j}, H^+) prod_j z_j^n_j`` on the block of ``dim``."""
    zs = [(block_var("z", v, j), v) for v, n in dim for j in range(1, n + 1)]
    ups = _h_factors(hplus)
    targets = {("l", b): n for b, (_, n) in enumerate(ups)}
    factors = [(iz, ib, (("l", b),), z, 1) for z, iz in zs for b, (ib, _) in enumerate(ups)]
    return RatFunc.coerce(_tau_series_product(quiver, factors, targets))


def pair_h(quiver, hminus, hplus):
    """``(H^-, H^+)`` for h-monomials."""
    return h_pairing_factor_upper(quiver, hminus, hplus, ())


# -- extended pairing -----------------------------------------------------------------

def _pair_terms(quiver, dlow, hminus, f, dup, hplus, g, limit=True):
    if dlow != dup:
        return RatFunc.const(0)
    total = RatFunc.const(0)
    for h1, h2, c in h_coproduct(hplus):
        left = RatFunc.coerce(f) * h_pairing_factor_lower(quiver, h2, dlow)
        right = RatFunc.coerce(g) * h_pairing_factor_upper(quiver, hminus, h1, dup)
        if left.is_zero() or right.is_zero():
            continue
        total = total + pair_functions(quiver, left, right, dlow, limit=False).scale(c)
    return total.limit_p_to_q() if limit else total


def _single_slot_terms(u, side):
    if u.side != side:
        raise KHAError(f"expected an element of the {side} algebra, got {u.side}")
    if getattr(u, "h_right", False):
        raise KHAError("pairing needs the h-left normal form")
    return [(dims[0], hs[0], f) for (dims, hs), f in u.terms.items()]


def pair_extended(quiver, lower, upper):
    """``(lower, upper)`` for extended elements in h-left normal form."""
    total = RatFunc.const(0)
    for d1, h1, f in _single_slot_terms(lower, LEQ):
        for d2, h2, g in _single_slot_terms(upper, GEQ):
            total = total + _pair_terms(quiver, d1, h1, f, d2, h2, g, limit=False)
    return total.limit_p_to_q().simplify()


def pair_tensor(quiver, tensor, factors):
    """Pair a multi-slot tensor with a list of single elements, one per slot.

    The tensor may live on either side; ``factors`` live on the other.  Slots
    are integrated in order, the variables of later slots staying symbolic.
    """
    if len(factors) != tensor.nslots:
        raise DimensionMismatch("one factor per tensor slot is required")
    if tensor.h_right:
        raise KHAError("pairing needs the h-left normal form")
    other = GEQ if tensor.side == LEQ else LEQ
    pres = tensor.prefixes
    per_slot = [_single_slot_terms(u, other) for u in factors]
    total = RatFunc.const(0)
    for (dims, hs), F in tensor.terms.items():
        partial = [(RatFunc.coerce(F))]
        for s in range(tensor.nslots):
            rename = {block_var(pres[s], v, j): block_var("z", v, j)
                      for v, n in dims[s] for j in range(1, n + 1)}
            nxt = []
            for fun in partial:
                fun = fun.rename(rename)
                for d, h, g in per_slot[s]:
                    if tensor.side == LEQ:
                        val = _pair_terms(quiver, dims[s], hs[s], fun, d, h, g, limit=False)
                    else:
                        val = _pair_terms(quiver, d, h, g, dims[s], hs[s], fun, limit=False)
                    if not val.is_zero():
                        nxt.append(val)
            partial = nxt
        for val in partial:
            total = total + val
    return total.limit_p_to_q().simplify()


# -- Gram matrices ---------------------------------------------------------------------

def gram_matrix(quiver, lowers, uppers):
    return [[pair_extended(quiver, a, b) for b in uppers] for a in lowers]


def determinant(matrix):
    """Leibniz expansion, skipping permutations through zero entries."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch("Gram matrix is not square")
    total = RatFunc.const(0)
    for perm in permutations(range(n)):
        term = RatFunc.const(1)
        for r, c in enumerate(perm):
            entry = matrix[r][c]
            if entry.is_zero():
                term = None
                break
            term = term * entry
        if term is None:
            continue
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = total + (term if inversions % 2 == 0 else -term)
    return total.simplify()


def gram_determinant(quiver, lowers, uppers):
    return determinant(gram_matrix(quiver, lowers, uppers))


__all__ = [
    "classify_pole", "contour_integrate", "determinant", "gram_determinant", "gram_matrix",
    "h_pairing_factor_lower", "h_pairing_factor_upper", "integrate_variable", "pair_extended",
    "pair_functions", "pair_h", "pair_shuffle", "pair_tensor", "psi_kernel",
]
