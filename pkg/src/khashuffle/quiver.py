"""Quivers with torus weights and the kernel factors built from them."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateWeight, NotSymmetric, PotentialNotInvariant, UnknownSymbol
from .laurent import ONE, mono_from_dict, mono_inv, mono_mul, mono_str
from .ratfunc import RatFunc

RESERVED = ("q", "p")
U = (("u", 1),)


@dataclass(frozen=True)
class Edge:
    name: str
    source: object
    target: object


@dataclass(frozen=True)
class PotentialWord:
    cycle: tuple
    coefficient: Fraction = Fraction(1)


@dataclass
class QuiverModel:
    vertices: list
    edges: list
    weight: dict
    parameters: list = field(default_factory=lambda: list(RESERVED))

    def __post_init__(self):
        self.edges = [e if isinstance(e, Edge) else Edge(*e) for e in self.edges]
        self.weight = {k: (mono_from_dict(v) if isinstance(v, dict) else v)
                       for k, v in self.weight.items()}
        for r in RESERVED:
            if r not in self.parameters:
                self.parameters.append(r)
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("edge names must be unique")
        for e in self.edges:
            if e.source not in self.vertices or e.target not in self.vertices:
                raise ValueError(f"edge {e.name} has an unknown endpoint")
            if e.name not in self.weight:
                raise ValueError(f"edge {e.name} has no weight")
            for k, _ in self.weight[e.name]:
                if k not in self.parameters:
                    raise UnknownSymbol(f"weight of edge {e.name} uses undeclared symbol {k!r}")
        self._arrows = {}
        for e in self.edges:
            self._arrows.setdefault((e.source, e.target), []).append(self.weight[e.name])

    def arrows(self, i, j):
        """Weights of the edges ``i -> j``."""
        return self._arrows.get((i, j), [])

    def is_symmetric(self):
        return all(len(self.arrows(i, j)) == len(self.arrows(j, i))
                   for i in self.vertices for j in self.vertices)


def validate(quiver, potential=()):
    """Check symmetry and torus invariance of each potential word."""
    for i in quiver.vertices:
        for j in quiver.vertices:
            if len(quiver.arrows(i, j)) != len(quiver.arrows(j, i)):
                raise NotSymmetric(f"{len(quiver.arrows(i, j))} edges {i}->{j} but "
                                   f"{len(quiver.arrows(j, i))} edges {j}->{i}")
    by_name = {e.name: e for e in quiver.edges}
    for word in potential:
        cyc = list(word.cycle)
        if not cyc:
            raise PotentialNotInvariant("empty potential word")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a not in by_name or b not in by_name:
                raise PotentialNotInvariant(f"word {cyc} uses an unknown edge")
            if by_name[a].target != by_name[b].source:
                raise PotentialNotInvariant(f"word {cyc} is not a closed path")
        w = ONE
        for a in cyc:
            w = mono_mul(w, quiver.weight[a])
        if w:
            raise PotentialNotInvariant(f"word {cyc} has torus weight {mono_str(w)} != 1")
    return True


def triple(quiver, full_torus=False):
    """Tripled quiver: edges ``e``, reversed ``e_bar`` and a loop ``omega_i`` per vertex.

    The minimal torus gives ``e -> t q``, ``e_bar -> t^-1 q``, ``omega -> q^-2``;
    ``full_torus`` uses a fresh ``q_e`` per original edge in place of ``t``.
    """
    params = [p for p in quiver.parameters]
    edges, weight = [], {}
    for e in quiver.edges:
        s = f"q_{e.name}" if full_torus else "t"
        if s not in params:
            params.append(s)
        edges.append(Edge(e.name, e.source, e.target))
        weight[e.name] = mono_from_dict({s: 1, "q": 1})
        bar = f"{e.name}_bar"
        edges.append(Edge(bar, e.target, e.source))
        weight[bar] = mono_from_dict({s: -1, "q": 1})
    for i in quiver.vertices:
        name = f"omega_{i}"
        edges.append(Edge(name, i, i))
        weight[name] = mono_from_dict({"q": -2})
    return QuiverModel(list(quiver.vertices), edges, weight, params)


def tripled_potential(quiver):
    """Words of ``sum_i omega_i sum_e [e, e_bar]``; ``e e_bar`` closes at s(e), ``e_bar e`` at t(e)."""
    words = []
    for e in quiver.edges:
        words.append(PotentialWord((f"omega_{e.source}", e.name, f"{e.name}_bar"), Fraction(1)))
        words.append(PotentialWord((f"omega_{e.target}", f"{e.name}_bar", e.name), Fraction(-1)))
    return words


def zeta_factor(quiver, i, j, arg=U):
    """``prod_{e: i->j} (1 - q_e^-1 arg^-1) / (1 - arg^-1)^[i==j]``."""
    inv_arg = mono_inv(arg)
    out = RatFunc.const(1)
    for w in quiver.arrows(i, j):
        out = out * RatFunc.binomial(mono_mul(mono_inv(w), inv_arg))
    if i == j:
        out = out * RatFunc.inverse_binomial(inv_arg)
    return out


def inverse_zeta_factor(quiver, i, j, arg=U):
    """``1 / zeta_{ij}(arg)`` kept in binomial form."""
    inv_arg = mono_inv(arg)
    out = RatFunc.const(1)
    for w in quiver.arrows(i, j):
        out = out * RatFunc.inverse_binomial(mono_mul(mono_inv(w), inv_arg))
    if i == j:
        out = out * RatFunc.binomial(inv_arg)
    return out


def tau_factor(quiver, i, j, arg=U):
    """``zeta_{j i}(arg) / zeta_{i j}(arg^-1)``, simplified."""
    out = zeta_factor(quiver, j, i, arg)
    for w in quiver.arrows(i, j):
        out = out * RatFunc.inverse_binomial(mono_mul(mono_inv(w), arg))
    if i == j:
        out = out * RatFunc.binomial(arg)
    return out.simplify()


def zeta_tilde(quiver, i, i2, same_slot, arg=U):
    """Pairing kernel: ``zeta`` off the diagonal, ``prod (1 - q_e^-1)`` on it."""
    if not same_slot:
        return zeta_factor(quiver, i, i2, arg)
    out = RatFunc.const(1)
    for w in quiver.arrows(i, i):
        if not w:
            raise DegenerateWeight(f"loop at vertex {i} has trivial torus weight")
        out = out * RatFunc.binomial(mono_inv(w))
    return out


def mu_factor(arg=U):
    """``(1 - p^2 arg^-1) / (1 - q^2 arg^-1)``; the same for every vertex."""
    inv_arg = mono_inv(arg)
    p2 = mono_mul((("p", 2),), inv_arg)
    q2 = mono_mul((("q", 2),), inv_arg)
    if not q2:
        raise DegenerateWeight("mu factor evaluated where q^2 arg^-1 = 1")
    return RatFunc.binomial(p2) * RatFunc.inverse_binomial(q2)


def jordan_quiver():
    return QuiverModel([0], [Edge("loop", 0, 0)], {"loop": (("q", 1),)}, ["q", "p"])


def edge_count_matrix(quiver):
    return Counter((e.source, e.target) for e in quiver.edges)


# Dimension vectors are canonical tuples ``((vertex, count), ...)`` with positive counts.

def dimvec(d=None, **kw):
    if d is None:
        d = {}
    elif not isinstance(d, dict):
        d = dict(d)
    d = {**d, **{int(k) if k.isdigit() else k: v for k, v in kw.items()}}
    for v, n in d.items():
        if n < 0:
            raise ValueError("dimension vectors are non-negative")
    return tuple(sorted(((v, n) for v, n in d.items() if n),
                        key=lambda t: (isinstance(t[0], str), t[0])))


def dim_get(d, v):
    for k, n in d:
        if k == v:
            return n
    return 0


def dim_add(a, b):
    out = dict(a)
    for v, n in b:
        out[v] = out.get(v, 0) + n
    return dimvec(out)


def dim_sub(a, b):
    out = dict(a)
    for v, n in b:
        out[v] = out.get(v, 0) - n
        if out[v] < 0:
            raise ValueError("negative dimension")
    return dimvec(out)


def dim_total(d):
    return sum(n for _, n in d)


def dim_splits(d):
    """All ``(a, b)`` with ``a + b == d``."""
    from itertools import product
    verts = [v for v, _ in d]
    for combo in product(*(range(n + 1) for _, n in d)):
        a = dimvec(dict(zip(verts, combo)))
        yield a, dim_sub(d, a)


def dim_str(d):
    return "(" + ",".join(f"{v}:{n}" for v, n in d) + ")"
