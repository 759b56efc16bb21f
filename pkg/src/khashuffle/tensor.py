"""h-monomials, commutation past h-generators and truncated multi-slot tensors.

An h-monomial is a sorted tuple ``(((vertex, n), exponent), ...)``; negative
exponents are only allowed for ``n == 0`` (the inverse of ``h_{i,0}``).  Both
extended algebras are kept in the normal form ``h-monomial * function``, the
direction in which the defining relations rewrite products.

Truncation uses the left-degree grading: a variable of slot ``s`` contributes
its exponent to the degree of slot ``s`` and ``h^+_n`` (resp. ``h^-_n``)
contributes ``n`` (resp. ``-n``).  A tensor with ``order`` K is exact on every
term whose cumulative degrees ``D_1, D_1 + D_2, ...`` (all but the last slot)
are at most K; ``order=None`` means nothing was dropped.
"""
from __future__ import annotations


from .errors import DimensionMismatch, TruncationExceeded
from .laurent import LaurentPoly, block_var, parse_block_var
from .quiver import U, dim_add, dim_str, tau_factor
from .ratfunc import RatFunc
from .series import expand_series
from .shuffle import block_vars, shuffle_blocks

GEQ, LEQ = "geq", "leq"
SLOT_PREFIXES = {1: ("z",), 2: ("x", "y"), 3: ("x", "y", "v")}
H_ONE = ()


def _vkey(v):
    return (isinstance(v, str), v)


def h_monomial(d):
    """Canonical h-monomial from ``{(vertex, n): exponent}``."""
    for (v, n), e in d.items():
        if e < 0 and n != 0:
            raise ValueError("only h_{i,0} may appear with a negative exponent")
    return tuple(sorted(((k, e) for k, e in d.items() if e),
                        key=lambda t: (_vkey(t[0][0]), t[0][1])))


def h_gen(vertex, n, exp=1):
    return h_monomial({(vertex, n): exp})


def h_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return h_monomial(d)


def h_index(h):
    """Sum of indices ``n`` with multiplicity."""
    return sum(n * e for (_, n), e in h)


def h_weight(h, side):
    return h_index(h) if side == GEQ else -h_index(h)


def h_str(h, side):
    if not h:
        return "1"
    s = "+" if side == GEQ else "-"
    parts = []
    for (v, n), e in h:
        g = f"h{s}[{v},{n}]"
        parts.append(g if e == 1 else f"{g}^{e}")
    return "*".join(parts)


def h_counit(h):
    return 1 if all(n == 0 for (_, n), _ in h) else 0


def h_coproduct(h):
    """``Delta(H)`` as a list of ``(H1, H2, coefficient)``; every ``h_i(w)`` is group-like."""
    out = {(H_ONE, H_ONE): 1}
    for (v, n), e in h:
        if e < 0:
            inv = h_gen(v, 0, e)
            out = {(h_mul(a, inv), h_mul(b, inv)): c for (a, b), c in out.items()}
            continue
        for _ in range(e):
            nxt = {}
            for (a, b), c in out.items():
                for k in range(n + 1):
                    key = (h_mul(a, h_gen(v, k)), h_mul(b, h_gen(v, n - k)))
                    nxt[key] = nxt.get(key, 0) + c
            out = nxt
    return [(a, b, c) for (a, b), c in out.items()]


# -- tau expansions -----------------------------------------------------------

def _cache(quiver):
    return quiver.__dict__.setdefault("_kha_cache", {})


def tau_coefficients(quiver, i, j, upto, at="zero"):
    """Coefficients ``c_r`` of ``tau_{ij}(u) = sum_r c_r u^r`` near ``u = 0``.

    With ``at="infinity"`` the expansion is in ``u^-1`` and the keys are the
    powers of ``u^-1``.  Returns ``(dict r -> LaurentPoly, lowest r)``.
    """
    key = ("tau", i, j, upto, at)
    cache = _cache(quiver)
    if key in cache:
        return cache[key]
    f = tau_factor(quiver, i, j, U)
    if at != "zero":
        f = f.substitute({"u": (("u", -1),)})
    ser = expand_series(f, {"u"}, upto)
    if ser.value.den:
        raise AssertionError("tau expansion has a parameter denominator")
    coeffs = {}
    for m, c in ser.value.num.terms.items():
        r = dict(m).pop("u", 0)
        rest = tuple(t for t in m if t[0] != "u")
        coeffs.setdefault(r, {})[rest] = c
    coeffs = {r: LaurentPoly(d) for r, d in coeffs.items()}
    lo_true = _tau_valuation(quiver, i, j, at)
    cache[key] = (coeffs, lo_true)
    return cache[key]


def _tau_valuation(quiver, i, j, at):
    key = ("tauval", i, j, at)
    cache = _cache(quiver)
    if key not in cache:
        f = tau_factor(quiver, i, j, U)
        if at != "zero":
            f = f.substitute({"u": (("u", -1),)})
        ser = expand_series(f, {"u"}, 0)
        lo = ser.value.num.min_degree(lambda m: dict(m).get("u", 0))
        # the lowest power is found once the window reaches it
        window = 0
        while lo is None:
            window += 4
            ser = expand_series(f, {"u"}, window)
            lo = ser.value.num.min_degree(lambda m: dict(m).get("u", 0))
        cache[key] = lo
    return cache[key]


def t_coefficients(quiver, side, i, variables, kmax):
    """Coefficients of the commutation series for ``h_i`` against a block.

    ``geq``: ``T(w) = prod_v tau_{i,i(v)}(v/w)``, keyed by the power of ``w^-1``.
    ``leq``: ``T(w) = prod_v tau_{i,i(v)}(w/v)``, keyed by the power of ``w``.
    Returns ``{k: RatFunc}`` for every ``k <= kmax``.
    """
    key = ("T", side, i, tuple(variables), kmax)
    cache = _cache(quiver)
    if key in cache:
        return cache[key]
    infos = []
    for v in variables:
        vi = parse_block_var(v)[1]
        infos.append((v, vi, _tau_valuation(quiver, i, vi, "zero")))
    total_lo = sum(s for _, _, s in infos)
    acc = {0: LaurentPoly.const(1)}
    for v, vi, s in infos:
        upto = kmax - (total_lo - s)
        if upto < s:
            acc = {}
            break
        coeffs, _ = tau_coefficients(quiver, i, vi, upto)
        nxt = {}
        sign = 1 if side == GEQ else -1
        for k0, p0 in acc.items():
            for r, c in coeffs.items():
                k = k0 + r
                term = p0 * c.scale(1, ((v, sign * r),) if r else ())
                nxt[k] = nxt[k] + term if k in nxt else term
        acc = nxt
    out = {k: RatFunc.coerce(p) for k, p in acc.items() if k <= kmax and not p.is_zero()}
    cache[key] = out
    return out


def commute(quiver, side, f, dim, prefix, h):
    """Rewrite ``f * H`` (``f`` a function of the ``prefix`` block of degree ``dim``)
    as ``sum H' * f'``; returns ``{H': f'}``."""
    variables = block_vars(dim, prefix)
    state = {H_ONE: f}
    if not variables or not h:
        return {h: f}
    for (i, n), e in h:
        if e < 0:
            # f h_0 = h_0 (f T_0) inverts only when T(w) starts at w^0
            t0 = t_coefficients(quiver, side, i, variables, 0)
            if set(t0) != {0}:
                raise TruncationExceeded(
                    "commuting past an inverse h_{i,0} needs tau(0) finite and nonzero")
            inv = t0[0].inverse() ** (-e)
            state = {h_mul(k, h_gen(i, 0, e)): g * inv for k, g in state.items()}
            continue
        tk = t_coefficients(quiver, side, i, variables, n)
        for _ in range(e):
            nxt = {}
            for k0, g in state.items():
                for k, c in tk.items():
                    m = n - k
                    if m < 0:
                        continue
                    key = h_mul(k0, h_gen(i, m))
                    term = g * c
                    nxt[key] = nxt[key] + term if key in nxt else term
            state = nxt
    return {k: v for k, v in state.items() if not v.is_zero()}


# -- tensors -------------------------------------------------------------------

class TruncatedTensor:
    """Sum of ``(H_1 (x) ... (x) H_k) * F`` over keys ``(dims, hs)``.

    ``F`` is a function of all slot blocks at once; slot ``s`` uses the block
    prefix ``SLOT_PREFIXES[k][s]``.
    """

    def __init__(self, side, nslots, terms=None, order=None, h_right=False):
        if nslots not in SLOT_PREFIXES:
            raise ValueError("1 to 3 tensor slots are supported")
        self.side = side
        # terms read ``F * H`` instead of ``H * F`` (used for the A<= antipode)
        self.h_right = h_right
        self.nslots = nslots
        self.order = order
        self.terms = {}
        for key, f in (terms or {}).items():
            f = RatFunc.coerce(f)
            if not f.is_zero():
                self.terms[key] = f
        if order is not None:
            self._apply_truncation(order)

    @property
    def prefixes(self):
        return SLOT_PREFIXES[self.nslots]

    def _new(self, terms, order):
        return TruncatedTensor(self.side, self.nslots, terms, order, self.h_right)

    # degrees ------------------------------------------------------------------
    def _slot_of(self, name):
        b = parse_block_var(name)
        if b is None:
            return None
        try:
            return self.prefixes.index(b[0])
        except ValueError:
            return None

    def cumulative(self, mono, hs):
        deg = [h_weight(h, self.side) for h in hs]
        for name, e in mono:
            s = self._slot_of(name)
            if s is not None:
                deg[s] += e
        out, run = [], 0
        for s in range(self.nslots - 1):
            run += deg[s]
            out.append(run)
        return out

    def _apply_truncation(self, order):
        kept = {}
        for key, f in self.terms.items():
            hs = key[1]
            num = f.num.filter(lambda m: all(d <= order for d in self.cumulative(m, hs)))
            if not num.is_zero():
                kept[key] = RatFunc._raw(num, dict(f.den))
        self.terms = kept

    def lo(self):
        """Per-boundary minimum cumulative degree (``None`` when empty)."""
        best = None
        for (dims, hs), f in self.terms.items():
            for m in f.num.terms:
                c = self.cumulative(m, hs)
                best = c if best is None else [min(a, b) for a, b in zip(best, c)]
        return best

    def truncate(self, order):
        if self.order is not None:
            order = min(order, self.order)
        return self._new(self.terms, order)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, f in other.terms.items():
            terms[k] = terms[k] + f if k in terms else f
        return self._new(terms, _min_order(self.order, other.order))

    def __neg__(self):
        return self._new({k: -f for k, f in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({k: f * c for k, f in self.terms.items()}, self.order)

    def _check(self, other):
        if not isinstance(other, TruncatedTensor) or other.side != self.side \
                or other.nslots != self.nslots:
            raise DimensionMismatch("tensors of different shape")
        if other.h_right != self.h_right and not (self.is_pure() and other.is_pure()):
            raise DimensionMismatch("cannot mix h-left and h-right ordered tensors")

    def is_pure(self):
        """Every term has a trivial h-part or a degree-0 function in each slot."""
        return all(not h or not d for (dims, hs) in self.terms for d, h in zip(dims, hs))

    def simplified(self):
        return self._new({k: f.simplify() for k, f in self.terms.items()}, self.order)

    def is_zero(self):
        return all(f.is_zero() for f in self.terms.values())

    def difference(self, other, order=None):
        """``self - other`` restricted to the common exactness region."""
        d = self - other
        if order is not None:
            d = d.truncate(order)
        return d.simplified()

    def equals(self, other, order=None):
        return self.difference(other, order).is_zero()

    def __eq__(self, other):
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def components(self):
        """Group terms by their tuple of slot degrees."""
        out = {}
        for (dims, hs), f in self.terms.items():
            out.setdefault(dims, []).append((hs, f))
        return out

    def first_term(self):
        """A short description of one nonzero term (used for failure reports)."""
        for (dims, hs), f in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            if not f.is_zero():
                return f"{tensor_key_str((dims, hs), self.side)}: {f}"
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        lines = []
        for key, f in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            lines.append(f"[{tensor_key_str(key, self.side)}] {f}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TruncatedTensor({self.side}, {self.nslots} slots, {len(self.terms)} terms)"


def tensor_key_str(key, side):
    dims, hs = key
    return " (x) ".join(f"{h_str(h, side)}|{dim_str(d)}" for d, h in zip(dims, hs))


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def tensor_product(quiver, A, B, op=False):
    """Slotwise product of two tensors of the same shape.

    Each slot multiplies ``(H F)(H' G) = H (F H') G``: the function ``F`` is moved
    past ``H'`` with :func:`commute`, then the slot blocks are shuffled.
    """
    A._check(B)
    if A.h_right or B.h_right:
        return _tensor_product_right(quiver, A, B, op)
    side, k, pres = A.side, A.nslots, A.prefixes
    order = None
    if A.order is not None or B.order is not None:
        lo_a, lo_b = A.lo(), B.lo()
        cands = []
        for s in range(k - 1):
            if A.order is not None and lo_b is not None:
                cands.append(A.order + lo_b[s])
            if B.order is not None and lo_a is not None:
                cands.append(B.order + lo_a[s])
        order = min(cands) if cands else _min_order(A.order, B.order)
    groups = {}
    for (da, ha), f in A.terms.items():
        for bkey, g in B.terms.items():
            hb = bkey[1]
            parts = {(): f}
            for s in range(k):
                nxt = {}
                for hp, fp in parts.items():
                    for h2, f2 in commute(quiver, side, fp, da[s], pres[s], hb[s]).items():
                        nxt[hp + (h2,)] = f2
                parts = nxt
            for hp, fp in parts.items():
                if order is not None:
                    fp = _prune(A, fp, ha, hp, order, B, g, hb)
                hs = tuple(h_mul(ha[s], hp[s]) for s in range(k))
                gkey = (bkey, da, hs)
                groups[gkey] = groups[gkey] + fp if gkey in groups else fp
    # the shuffle is bilinear, so equal (B term, degree, h-key) groups share one call
    terms = {}
    for ((db, _), da, hs), fp in groups.items():
        if fp.is_zero():
            continue
        g = B.terms[(db, _)]
        fd = {pres[s]: da[s] for s in range(k)}
        gd = {pres[s]: db[s] for s in range(k)}
        if op:
            val = shuffle_blocks(quiver, g, gd, fp, fd)
        else:
            val = shuffle_blocks(quiver, fp, fd, g, gd)
        key = (tuple(dim_add(da[s], db[s]) for s in range(k)), hs)
        terms[key] = terms[key] + val if key in terms else val
    return TruncatedTensor(side, k, terms, order)


def _tensor_product_right(quiver, A, B, op):
    """Product of h-right ordered tensors: ``(F H)(G H') = F G H H'``.

    Only defined when no h-monomial of ``A`` has to pass a function of ``B``.
    """
    k, pres = A.nslots, A.prefixes
    terms = {}
    for (da, ha), f in A.terms.items():
        for (db, hb), g in B.terms.items():
            if any(ha[s] and db[s] for s in range(k)):
                raise TruncationExceeded("moving h^- to the right past a function is not supported")
            fd = {pres[s]: da[s] for s in range(k)}
            gd = {pres[s]: db[s] for s in range(k)}
            val = shuffle_blocks(quiver, g, gd, f, fd) if op else shuffle_blocks(quiver, f, fd, g, gd)
            key = (tuple(dim_add(da[s], db[s]) for s in range(k)),
                   tuple(h_mul(ha[s], hb[s]) for s in range(k)))
            terms[key] = terms[key] + val if key in terms else val
    return TruncatedTensor(A.side, k, terms, _min_order(A.order, B.order), h_right=True)


def _prune(A, f, ha, hp, order, B, g, hb):
    """Drop monomials of ``f`` that cannot land inside the exactness region."""
    lo_g = None
    for m in g.num.terms:
        c = B.cumulative(m, [H_ONE] * B.nslots)
        lo_g = c if lo_g is None else [min(a, b) for a, b in zip(lo_g, c)]
    if lo_g is None:
        return f
    hs = tuple(h_mul(ha[s], hp[s]) for s in range(A.nslots))
    num = f.num.filter(lambda m: all(
        d + lg <= order for d, lg in zip(A.cumulative(m, hs), lo_g)))
    return RatFunc._raw(num, dict(f.den))


def rename_slots(f, src, dst):
    """Rename every block variable with prefix ``src[s]`` to ``dst[s]``."""
    mapping = {}
    for name in f.variables():
        b = parse_block_var(name)
        if b and b[0] in src:
            mapping[name] = block_var(dst[src.index(b[0])], b[1], b[2])
    return f.rename(mapping) if mapping else f


def monomial_split(f, left_prefix, left_dim, right_prefix, right_dim):
    """Write ``F(left, right) = sum_k P_k(left) m_k(right)`` with ``m_k`` monomial symmetric.

    Returns a list of ``(P, m)`` pairs; ``F`` must be symmetric in each block.
    """
    right_vars = set(block_vars(right_dim, right_prefix))
    groups = {}
    for m, c in f.num.terms.items():
        r = tuple(t for t in m if t[0] in right_vars)
        l = tuple(t for t in m if t[0] not in right_vars)
        groups.setdefault(_orbit_key(r, right_prefix), {}).setdefault(r, {})[l] = c
    out = []
    for orbit, members in groups.items():
        rep = next(iter(members))
        p = RatFunc._raw(LaurentPoly(members[rep]), dict(f.den))
        msum = LaurentPoly({r: 1 for r in members})
        out.append((p, RatFunc.coerce(msum)))
    return out


def _orbit_key(r, prefix):
    by_vertex = {}
    for name, e in r:
        b = parse_block_var(name)
        by_vertex.setdefault(b[1], []).append(e)
    return tuple(sorted((str(v), tuple(sorted(es))) for v, es in by_vertex.items()))


__all__ = [
    "GEQ", "LEQ", "H_ONE", "SLOT_PREFIXES", "TruncatedTensor", "commute", "h_coproduct",
    "h_counit", "h_gen", "h_index", "h_monomial", "h_mul", "h_str", "h_weight",
    "monomial_split", "rename_slots", "t_coefficients", "tau_coefficients", "tensor_product",
]
