"""Independent reference implementations used only by the tests.

Nothing here imports the engine's arithmetic: values are plain ``Fraction``
evaluations or sympy expressions.
"""
from fractions import Fraction
from itertools import permutations, product
from math import factorial

import sympy as sp


def weight_value(mono, point):
    out = Fraction(1)
    for k, e in mono:
        out *= Fraction(point[k]) ** e
    return out


def zeta_value(quiver, i, j, u, point):
    """``prod_{e: i->j} (1 - q_e^-1 u^-1) / (1 - u^-1)^[i==j]`` at a numeric ``u``."""
    out = Fraction(1)
    for e in quiver.edges:
        if e.source == i and e.target == j:
            out *= 1 - 1 / (weight_value(quiver.weight[e.name], point) * u)
    if i == j:
        out /= 1 - 1 / u
    return out


def brute_shuffle_value(quiver, f, fdim, g, gdim, zpoint, point):
    """Evaluate ``f * g`` at ``zpoint`` by summing over the full product of symmetric groups.

    ``f``/``g`` are python callables on dicts ``{(vertex, slot): value}``.
    """
    total_dim = dict(fdim)
    for v, n in gdim.items():
        total_dim[v] = total_dim.get(v, 0) + n
    verts = sorted(total_dim)
    perms = [list(permutations(range(1, total_dim[v] + 1))) for v in verts]
    total = Fraction(0)
    for combo in product(*perms):
        sigma = {v: p for v, p in zip(verts, combo)}
        first, second = {}, {}
        for v in verts:
            a = fdim.get(v, 0)
            for j in range(1, total_dim[v] + 1):
                val = zpoint[(v, sigma[v][j - 1])]
                if j <= a:
                    first[(v, j)] = val
                else:
                    second[(v, j - a)] = val
        term = f(first) * g(second)
        for (v, _), x in first.items():
            for (w, _), y in second.items():
                term *= zeta_value(quiver, v, w, x / y, point)
        total += term
    norm = 1
    for v in verts:
        norm *= factorial(fdim.get(v, 0)) * factorial(gdim.get(v, 0))
    return total / norm


def laurent_coefficients(expr, var, n):
    """First ``n`` coefficients of ``expr`` expanded around ``var = 0``."""
    s = sp.series(expr, var, 0, n).removeO()
    return [sp.simplify(s.coeff(var, k)) for k in range(n)]


def ratfunc_to_sympy(f):
    """Rebuild an engine value as a sympy expression (block variables become symbols)."""
    syms = {}

    def sym(name):
        if name not in syms:
            syms[name] = sp.Symbol(name)
        return syms[name]

    def mono(m):
        out = sp.Integer(1)
        for k, e in m:
            out *= sym(k) ** e
        return out

    num = sum((sp.Rational(c.numerator, c.denominator) * mono(m)
               for m, c in ((m, Fraction(c)) for m, c in f.num.terms.items())), sp.Integer(0))
    den = sp.Integer(1)
    for m, k in f.den.items():
        den *= (1 - mono(m)) ** k
    return num / den
