"""Shuffle algebra elements, the shuffle product and the raw coproducts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from .errors import DimensionMismatch, NonPolynomialProduct, NotSymmetricElement
from .laurent import LaurentPoly, block_var, mono_from_dict, parse_block_var
from .quiver import dim_add, dim_get, dim_str, dim_sub, dimvec, inverse_zeta_factor, zeta_factor
from .ratfunc import RatFunc, binomial_power
from .series import TruncatedSeries, expand_series


def block_vars(dim, prefix="z"):
    return [block_var(prefix, v, j) for v, n in dim for j in range(1, n + 1)]


def _ratio(a, b):
    return mono_from_dict({a: 1, b: -1}) if a != b else ()


def is_symmetric(value, dim, prefix="z"):
    """Check invariance under the generators ``(1 2)`` and ``(1 2 ... n)`` of each block."""
    value = RatFunc.coerce(value)
    for v, n in dim:
        if n < 2:
            continue
        names = [block_var(prefix, v, j) for j in range(1, n + 1)]
        swap = {names[0]: names[1], names[1]: names[0]}
        cyc = {names[j]: names[(j + 1) % n] for j in range(n)}
        for mapping in (swap, cyc):
            if value.rename(mapping) != value:
                return False
    return True


class ShuffleElement:
    """A symmetric rational function in the block ``z[i, 1..d_i]``."""

    __slots__ = ("dim", "value")

    def __init__(self, dim, value, check=True):
        self.dim = dimvec(dim)
        self.value = RatFunc.coerce(value)
        if check:
            for name in self.value.variables():
                b = parse_block_var(name)
                if b and (b[0] != "z" or not 1 <= b[2] <= dim_get(self.dim, b[1])):
                    raise DimensionMismatch(f"variable {name} is outside degree {dim_str(self.dim)}")
            if not is_symmetric(self.value, self.dim):
                raise NotSymmetricElement(f"element of degree {dim_str(self.dim)} is not symmetric")

    @classmethod
    def unit(cls):
        return cls((), RatFunc.const(1), check=False)

    def is_polynomial(self):
        return not self.value.simplify().has_block_denominator()

    def __add__(self, other):
        if other.dim != self.dim:
            raise DimensionMismatch("cannot add elements of different degree")
        return ShuffleElement(self.dim, self.value + other.value, check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return ShuffleElement(self.dim, self.value * c, check=False)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        if self.value.is_zero() and other.value.is_zero():
            return True
        return self.dim == other.dim and self.value == other.value

    __hash__ = None

    def __repr__(self):
        return f"ShuffleElement({dim_str(self.dim)}, {self.value})"


@dataclass
class SplitElement:
    """Image of an element under the split ``z -> (x | y)``; ``value`` may be a series."""

    left_dim: tuple
    right_dim: tuple
    value: object


def split_mapping(a, b, src="z", left="x", right="y"):
    """Rename ``src[i,j]`` to ``left[i,j]`` for ``j <= a_i`` and to ``right[i,j-a_i]`` after."""
    out = {}
    for v, n in dim_add(a, b):
        k = dim_get(a, v)
        for j in range(1, n + 1):
            out[block_var(src, v, j)] = block_var(left, v, j) if j <= k else block_var(right, v, j - k)
    return out


def restrict_split(x, a, b):
    a, b = dimvec(a), dimvec(b)
    if dim_add(a, b) != x.dim:
        raise DimensionMismatch(f"{dim_str(a)} + {dim_str(b)} != {dim_str(x.dim)}")
    return SplitElement(a, b, x.value.rename(split_mapping(a, b)))


def cross_zeta(quiver, first, second, inverse=False):
    """``prod zeta_{ii'}(u/v)`` over variable names ``u`` in ``first`` and ``v`` in ``second``."""
    out = RatFunc.const(1)
    for u in first:
        iu = parse_block_var(u)[1]
        for v in second:
            iv = parse_block_var(v)[1]
            f = inverse_zeta_factor if inverse else zeta_factor
            out = out * f(quiver, iu, iv, _ratio(u, v))
    return out


def _cosets(dim_a, dim_b):
    """Sorted-position shuffles: per vertex the slots taken by the first factor."""
    d = dim_add(dim_a, dim_b)
    per_vertex = []
    for v, n in d:
        per_vertex.append([(v, c) for c in combinations(range(1, n + 1), dim_get(dim_a, v))])
    for choice in product(*per_vertex):
        yield dict(choice)


def _coset_kernels(quiver, pre, a, b):
    cache = quiver.__dict__.setdefault("_kha_cache", {})
    key = ("cosets", pre, a, b)
    if key in cache:
        return cache[key]
    options = []
    for A in _cosets(a, b):
        fmap, gmap, first, second = {}, {}, [], []
        for v, n in dim_add(a, b):
            taken = A[v]
            rest = [j for j in range(1, n + 1) if j not in taken]
            for k, j in enumerate(taken, 1):
                fmap[block_var(pre, v, k)] = block_var(pre, v, j)
                first.append(block_var(pre, v, j))
            for k, j in enumerate(rest, 1):
                gmap[block_var(pre, v, k)] = block_var(pre, v, j)
                second.append(block_var(pre, v, j))
        options.append((fmap, gmap, cross_zeta(quiver, first, second)))
    cache[key] = options
    return options


def shuffle_blocks(quiver, f, fdims, g, gdims):
    """Shuffle product of functions living on several variable blocks at once.

    ``fdims`` and ``gdims`` map a block prefix to the degree of that block.  Every
    block is symmetrized independently with its own zeta kernel; blocks never
    interact.  The result lives on the blocks of degree ``fdims + gdims``.
    """
    prefixes = sorted(set(fdims) | set(gdims))
    per_prefix = [_coset_kernels(quiver, pre, dimvec(fdims.get(pre, ())), dimvec(gdims.get(pre, ())))
                  for pre in prefixes]
    pieces = []
    for combo in product(*per_prefix):
        fmap, gmap, kern = {}, {}, RatFunc.const(1)
        for fm, gm, k in combo:
            fmap.update(fm)
            gmap.update(gm)
            kern = kern * k
        pieces.append(f.rename(fmap) * g.rename(gmap) * kern)
    return sum_over_common_denominator(pieces).simplify()


def sum_over_common_denominator(pieces):
    """Sum of rational functions, bringing each to the lcm denominator only once."""
    lcm = {}
    for p in pieces:
        for m, k in p.den.items():
            lcm[m] = max(lcm.get(m, 0), k)
    total = {}
    for p in pieces:
        num = p.num
        extra = [binomial_power(m, k - p.den.get(m, 0)) for m, k in lcm.items() if k > p.den.get(m, 0)]
        for b in sorted(extra, key=len):
            num = num * b
        for mo, c in num.terms.items():
            total[mo] = total.get(mo, 0) + c
    return RatFunc(LaurentPoly({mo: c for mo, c in total.items() if c}), lcm)


def shuffle_product(quiver, x, y, op=False):
    """``x * y`` in the shuffle algebra (``y * x`` when ``op``)."""
    if op:
        x, y = y, x
    if not x.dim:
        return ShuffleElement(y.dim, y.value * x.value, check=False)
    if not y.dim:
        return ShuffleElement(x.dim, x.value * y.value, check=False)
    value = shuffle_blocks(quiver, x.value, {"z": x.dim}, y.value, {"z": y.dim})
    if value.has_block_denominator() and not x.value.has_block_denominator() \
            and not y.value.has_block_denominator():
        raise NonPolynomialProduct("diagonal poles did not cancel in the symmetrized sum")
    return ShuffleElement(dim_add(x.dim, y.dim), value, check=False)


def brute_force_product(quiver, x, y):
    """Full symmetrization over ``prod S_{d_i}`` divided by ``prod a_i! b_i!``."""
    d = dim_add(x.dim, y.dim)
    fmap, gmap, first, second = {}, {}, [], []
    for v, n in d:
        k = dim_get(x.dim, v)
        for j in range(1, n + 1):
            name = block_var("z", v, j)
            if j <= k:
                fmap[name] = name
                first.append(name)
            else:
                gmap[block_var("z", v, j - k)] = name
                second.append(name)
    base = x.value.rename(fmap) * y.value.rename(gmap) * cross_zeta(quiver, first, second)
    perms = []
    for v, n in d:
        names = [block_var("z", v, j) for j in range(1, n + 1)]
        perms.append([dict(zip(names, p)) for p in permutations(names)])
    total = RatFunc.const(0)
    for combo in product(*perms):
        mapping = {}
        for m in combo:
            mapping.update(m)
        total = total + base.rename(mapping)
    norm = 1
    for v, _ in d:
        norm *= factorial(dim_get(x.dim, v)) * factorial(dim_get(y.dim, v))
    return ShuffleElement(d, (total * Fraction(1, norm)).simplify(), check=False)


def coproduct_raw(quiver, x, a, b, order, side="geq"):
    """Raw coproduct component ``Delta'_{a,b}`` expanded where the left block is small.

    For ``geq`` the split function is divided by ``prod zeta(y/x)``, for ``leq`` by
    ``prod zeta(x/y)``.
    """
    split = restrict_split(x, a, b)
    xs, ys = block_vars(split.left_dim, "x"), block_vars(split.right_dim, "y")
    if side == "geq":
        kern = cross_zeta(quiver, ys, xs, inverse=True)
    else:
        kern = cross_zeta(quiver, xs, ys, inverse=True)
    f = split.value * kern
    return SplitElement(split.left_dim, split.right_dim, expand_series(f, xs, order))


def coproduct_raw_geq(quiver, x, a, b, order=8):
    return coproduct_raw(quiver, x, a, b, order, "geq")


def coproduct_raw_leq(quiver, y, a, b, order=8):
    return coproduct_raw(quiver, y, a, b, order, "leq")


__all__ = [
    "ShuffleElement", "SplitElement", "TruncatedSeries", "block_vars", "brute_force_product",
    "coproduct_raw", "coproduct_raw_geq", "coproduct_raw_leq", "cross_zeta", "dim_sub",
    "is_symmetric", "restrict_split", "shuffle_blocks", "shuffle_product", "split_mapping",
]
