"""The extended algebras A>= and A<=: elements, product, coproduct, counit, antipode."""
from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, TruncationExceeded
from .laurent import LaurentPoly, parse_block_var
from .quiver import dim_splits, dim_str
from .ratfunc import RatFunc
from .series import expand_series
from .shuffle import ShuffleElement, block_vars, cross_zeta, split_mapping
from .tensor import (
    GEQ,
    H_ONE,
    LEQ,
    SLOT_PREFIXES,
    TruncatedTensor,
    commute,
    h_coproduct,
    h_counit,
    h_gen,
    h_index,
    h_mul,
    h_str,
    h_weight,
    monomial_split,
    rename_slots,
    tensor_product,
)

# The shuffle part of A<= multiplies in KHA^op.
LEQ_OPPOSITE = True


class ExtendedElement(TruncatedTensor):
    """A one-slot tensor: ``sum H * f`` with ``f`` in the ``z`` block."""

    def __init__(self, side, terms=None, order=None, h_right=False):
        super().__init__(side, 1, terms, order, h_right)

    def _new(self, terms, order):
        return ExtendedElement(self.side, terms, order, self.h_right)

    @classmethod
    def unit(cls, side=GEQ):
        return cls(side, {(((),), (H_ONE,)): RatFunc.const(1)})

    @classmethod
    def from_shuffle(cls, x, side=GEQ, h=H_ONE, coeff=1):
        return cls(side, {((x.dim,), (h,)): x.value * coeff})

    @classmethod
    def h(cls, side, vertex, n, exp=1):
        return cls(side, {(((),), (h_gen(vertex, n, exp),)): RatFunc.const(1)})

    def shuffle_parts(self):
        """``[(H, ShuffleElement)]``."""
        return [(hs[0], ShuffleElement(dims[0], f, check=False))
                for (dims, hs), f in self.terms.items()]

    def h_degree(self):
        return max((h_index(hs[0]) for (_, hs) in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (dims, hs), f in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            parts.append(f"{h_str(hs[0], self.side)} * [{dim_str(dims[0])}: {f}]")
        return "\n".join(parts)


def _op(side):
    return side == LEQ and LEQ_OPPOSITE


def ext_product(quiver, u, v, order=None):
    """Product in A>= or A<=, normal ordered with h-monomials on the left."""
    if u.side != v.side:
        raise DimensionMismatch("cannot multiply elements of A>= and A<=")
    t = tensor_product(quiver, u, v, op=_op(u.side))
    out = ExtendedElement(u.side, t.terms, t.order, t.h_right)
    return out.truncate(order) if order is not None else out


def tensor_mul(quiver, A, B):
    return tensor_product(quiver, A, B, op=_op(A.side))


# -- coproduct -----------------------------------------------------------------

def _h_series_prefactor(side, variables, budget):
    """Expanded ``prod_j h_{i(j)}(v_j)`` with total index at most ``budget``.

    ``geq``: ``h^+(v) = sum h^+_n v^-n``; ``leq``: ``h^-(v) = sum h^-_n v^n``.
    Returns ``{H: LaurentPoly in the variables}``.
    """
    sign = -1 if side == GEQ else 1
    acc = {H_ONE: (0, LaurentPoly.const(1))}
    for v in variables:
        vi = parse_block_var(v)[1]
        nxt = {}
        for h, (used, p) in acc.items():
            for n in range(budget - used + 1):
                key = h_mul(h, h_gen(vi, n))
                term = p.scale(1, ((v, sign * n),) if n else ())
                if key in nxt:
                    nxt[key] = (used + n, nxt[key][1] + term)
                else:
                    nxt[key] = (used + n, term)
        acc = nxt
    return {h: p for h, (_, p) in acc.items()}


def _split_slot(quiver, side, f, dim, src, left, right, a, b, order_small):
    """Delta'_{a,b} of a function on block ``src``, expanded with ``left`` small."""
    mapping = split_mapping(a, b, src, left, right)
    g = f.rename(mapping)
    xs, ys = block_vars(a, left), block_vars(b, right)
    if xs and ys:
        kern = cross_zeta(quiver, ys, xs, inverse=True) if side == GEQ \
            else cross_zeta(quiver, xs, ys, inverse=True)
        g = g * kern
        return expand_series(g, xs, order_small).value
    return g


def _min_degree(f, names):
    return f.num.min_degree(lambda m: sum(e for k, e in m if k in names)) or 0


def apply_coproduct(quiver, T, slot, order, h_right=None):
    """Apply Delta to tensor slot ``slot``; the result has one more slot.

    Terms are kept exactly on the region where every cumulative degree is at
    most ``order`` (see :mod:`khashuffle.tensor`).  With ``h_right`` (A<= only)
    the new ``h^-`` factors stay to the right of the functions.
    """
    side, k = T.side, T.nslots
    if h_right is None:
        h_right = T.h_right
    if h_right and side != LEQ:
        raise ValueError("h-right ordering is only used for A<=")
    if k + 1 not in SLOT_PREFIXES:
        raise ValueError("at most three tensor slots are supported")
    tmp = tuple(f"t{s}" for s in range(k))
    new_tmp = tmp[:slot] + ("sl", "sr") + tmp[slot + 1:]
    terms = {}
    for (dims, hs), f in T.terms.items():
        f = rename_slots(f, T.prefixes, tmp)
        before = set()
        for s in range(slot):
            before.update(block_vars(dims[s], tmp[s]))
        lo_before = _min_degree(f, before) + sum(h_weight(hs[s], side) for s in range(slot))
        for h1, h2, c in h_coproduct(hs[slot]):
            w1 = h_weight(h1, side)
            for a, b in dim_splits(dims[slot]):
                budget = order - lo_before - w1
                g = _split_slot(quiver, side, f, dims[slot], tmp[slot], "sl", "sr", a, b, budget)
                g = RatFunc.coerce(g) * c
                new_dims = dims[:slot] + (a, b) + dims[slot + 1:]
                if side == GEQ:
                    ys = block_vars(b, "sr")
                    lo_g = _min_degree(g, set(block_vars(a, "sl"))) if not g.is_zero() else 0
                    pref = _h_series_prefactor(GEQ, ys, max(budget - lo_g, 0))
                    for hp, poly in pref.items():
                        hs_new = hs[:slot] + (h_mul(h1, hp), h2) + hs[slot + 1:]
                        _accumulate(terms, new_dims, hs_new, g * poly)
                else:
                    xs = block_vars(a, "sl")
                    lo_g = _min_degree(g, set(xs)) if not g.is_zero() else 0
                    pref = _h_series_prefactor(LEQ, xs, max(budget - lo_g, 0))
                    for hp, poly in pref.items():
                        if h_right:
                            hs_new = hs[:slot] + (h1, h_mul(h2, hp)) + hs[slot + 1:]
                            _accumulate(terms, new_dims, hs_new, g * poly)
                            continue
                        # right slot now reads (h2 * g) * hp; move hp to the left of g
                        moved = commute(quiver, LEQ, g * poly, b, "sr", hp)
                        for h3, g3 in moved.items():
                            hs_new = hs[:slot] + (h1, h_mul(h2, h3)) + hs[slot + 1:]
                            _accumulate(terms, new_dims, hs_new, g3)
    out_pre = SLOT_PREFIXES[k + 1]
    renamed = {key: rename_slots(f, new_tmp, out_pre) for key, f in terms.items()}
    return TruncatedTensor(side, k + 1, renamed, order, h_right)


def _accumulate(terms, dims, hs, f):
    key = (tuple(dims), tuple(hs))
    terms[key] = terms[key] + f if key in terms else f


def ext_coproduct(quiver, u, order=8, h_right=None):
    """Delta(u) in the completed tensor square, exact up to left degree ``order``."""
    return apply_coproduct(quiver, u, 0, order, h_right)


def coproduct_op(T):
    """Swap the two slots of a 2-slot tensor."""
    terms = {}
    for (dims, hs), f in T.terms.items():
        g = rename_slots(f, ("x", "y"), ("y", "x"))
        terms[((dims[1], dims[0]), (hs[1], hs[0]))] = g
    return TruncatedTensor(T.side, 2, terms, T.order, T.h_right)


# -- counit ---------------------------------------------------------------------

def counit(u):
    """epsilon(u): coefficients of degree-0 terms whose h-part has only ``h_{i,0}``."""
    out = RatFunc.const(0)
    for (dims, hs), f in u.terms.items():
        if all(not d for d in dims) and all(h_counit(h) for h in hs):
            out = out + f
    return out.simplify()


def counit_slot(T, slot):
    """Apply epsilon to one slot of a 2-slot tensor, giving an element."""
    if T.nslots != 2:
        raise ValueError("counit_slot expects a 2-slot tensor")
    keep = 1 - slot
    terms = {}
    for (dims, hs), f in T.terms.items():
        if dims[slot] or not h_counit(hs[slot]):
            continue
        g = rename_slots(f, (T.prefixes[keep],), ("z",))
        key = ((dims[keep],), (hs[keep],))
        terms[key] = terms[key] + g if key in terms else g
    return ExtendedElement(T.side, terms, T.order, T.h_right)


# -- antipode -------------------------------------------------------------------

def _inverse_h_series(vertex, order):
    """Coefficients ``g_n`` of ``h_i(w)^-1`` as ``{H: coefficient}`` per ``n``."""
    inv0 = h_gen(vertex, 0, -1)
    g = [{inv0: Fraction(1)}]
    for n in range(1, order + 1):
        acc = {}
        for k in range(1, n + 1):
            for h, c in g[n - k].items():
                key = h_mul(h_mul(inv0, h_gen(vertex, k)), h)
                acc[key] = acc.get(key, 0) - c
        g.append({h: c for h, c in acc.items() if c})
    return g


def _antipode_prefactor(side, variables, order):
    """``prod_j (-h(v_j))^-1`` expanded to total index ``order``: ``{H: LaurentPoly}``."""
    sign = -1 if side == GEQ else 1
    acc = {H_ONE: (0, LaurentPoly.const(1))}
    for v in variables:
        vi = parse_block_var(v)[1]
        gs = _inverse_h_series(vi, order)
        nxt = {}
        for h, (used, p) in acc.items():
            for n in range(order - used + 1):
                for gh, c in gs[n].items():
                    key = h_mul(h, gh)
                    term = p.scale(-c, ((v, sign * n),) if n else ())
                    if key in nxt:
                        nxt[key] = (used + n, nxt[key][1] + term)
                    else:
                        nxt[key] = (used + n, term)
        acc = nxt
    return {h: p for h, (_, p) in acc.items()}


def antipode_h(side, h, order):
    """S(H) for an h-monomial, truncated at total index ``order``."""
    out = {H_ONE: Fraction(1)}
    for (v, n), e in h:
        if e < 0:
            out = {h_mul(k, h_gen(v, 0, -e)): c for k, c in out.items()}
            continue
        gs = _inverse_h_series(v, order)
        for _ in range(e):
            if n > order:
                return {}
            nxt = {}
            for k, c in out.items():
                for gh, gc in gs[n].items():
                    key = h_mul(k, gh)
                    nxt[key] = nxt.get(key, 0) + c * gc
            out = {k: c for k, c in nxt.items() if c}
    return {k: c for k, c in out.items() if h_index(k) <= order}


def antipode(quiver, u, order=6):
    """S(u), truncated at total h-index ``order``.

    ``S(h_i(w)) = h_i(w)^-1``; for a shuffle part ``y`` of degree ``d``,
    ``S(y) = prod_j (-h_i(z_ij))^-1 * y`` in A>= and ``y * prod_j (-h_i(z_ij))^-1``
    in A<=; S is an anti-homomorphism.  A<= results are h-right ordered: moving
    the h^- factors to the left would sum infinitely many terms into each
    coefficient.
    """
    side = u.side
    if side == GEQ:
        out = ExtendedElement(side, {}, None)
        for (dims, hs), f in u.terms.items():
            d = dims[0]
            pref = _antipode_prefactor(side, block_vars(d, "z"), order)
            Sy = ExtendedElement(side, {((d,), (hp,)): f * poly for hp, poly in pref.items()})
            SH = ExtendedElement(side, {(((),), (k,)): RatFunc.const(c)
                                        for k, c in antipode_h(side, hs[0], order).items()})
            out = out + ext_product(quiver, Sy, SH)
        return _truncate_index(out, order)
    terms = {}
    for (dims, hs), f in u.terms.items():
        d, h = dims[0], hs[0]
        if h and d:
            raise TruncationExceeded("the A<= antipode is only available on terms y or H")
        pref = _antipode_prefactor(side, block_vars(d, "z"), order)
        sh = antipode_h(side, h, order)
        for hp, poly in pref.items():
            for k, c in sh.items():
                _accumulate(terms, (d,), (h_mul(hp, k),), f * poly * c)
    return _truncate_index(ExtendedElement(side, terms, None, h_right=True), order)


def _truncate_index(u, order):
    return ExtendedElement(u.side, {k: f for k, f in u.terms.items()
                                    if h_index(k[1][0]) <= order}, u.order, u.h_right)


def _slot_to_element(side, f, dim, h, prefix, h_right=False):
    return ExtendedElement(side, {((dim,), (h,)): rename_slots(f, (prefix,), ("z",))},
                           None, h_right)


def multiply_slots(quiver, T, left_map=None, right_map=None, order=None):
    """``m (L (x) R)`` on a 2-slot tensor, with optional linear maps on each slot.

    Each bivariate function is split into products of symmetric functions of
    one slot before the maps are applied.
    """
    side = T.side
    out = ExtendedElement(side, {}, None, T.h_right)
    for (dims, hs), f in T.terms.items():
        for p, m in monomial_split(f, "x", dims[0], "y", dims[1]):
            left = _slot_to_element(side, p, dims[0], hs[0], "x", T.h_right)
            right = _slot_to_element(side, m, dims[1], hs[1], "y", T.h_right)
            if left_map:
                left = left_map(left)
            if right_map:
                right = right_map(right)
            out = out + ext_product(quiver, left, right)
    if order is not None:
        out = _truncate_index(out, order)
    return out.simplified()


__all__ = [
    "ExtendedElement", "LEQ_OPPOSITE", "antipode", "antipode_h", "apply_coproduct",
    "coproduct_op", "counit", "counit_slot", "ext_coproduct", "ext_product",
    "multiply_slots", "tensor_mul",
]
