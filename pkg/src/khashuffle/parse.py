"""Expression parser for rational functions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := '-'? INT | '(' '-'? INT ')' | NAME   (NAME bound to an integer)
    atom   := INT | NAME | NAME '[' vertex ',' INT ']' | '(' expr ')'

Division is allowed only by monomials or by products and powers of binomials.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ExprSyntaxError, NonBinomialDenominator, UnknownSymbol
from .laurent import block_var
from .quiver import dim_get
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass
class ParseContext:
    symbols: set = field(default_factory=lambda: {"q", "p"})
    dim: tuple | None = None
    prefixes: tuple = ("z",)
    integers: dict = field(default_factory=dict)
    vertices: list | None = None


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


# AST nodes are tuples: ("num", Fraction), ("sym", name), ("add", [(sign, node)]),
# ("mul", [(is_div, node)]), ("pow", node, int), ("neg", node).

class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        raise ExprSyntaxError(msg, pos, self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.i -= 1
            self.fail(f"expected {op!r}")
        return t

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        items = [(1, self.term())]
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            items.append((sign, self.term()))
        return items[0][1] if len(items) == 1 else ("add", items)

    def term(self):
        items = [(False, self.unary())]
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            div = self.take()[1] == "/"
            items.append((div, self.unary()))
        return items[0][1] if len(items) == 1 else ("mul", items)

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        paren = self.peek()[0] == "op" and self.peek()[1] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] == "int":
            val = int(t[1])
        elif t[0] == "name" and t[1] in self.ctx.integers:
            val = int(self.ctx.integers[t[1]])
        elif t[0] == "name":
            raise UnknownSymbol(f"exponent {t[1]!r} is not a bound integer", t[2], self.text)
        else:
            self.i -= 1
            self.fail("expected an integer exponent")
        if paren:
            self.expect(")")
        return sign * val

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return ("num", Fraction(int(t[1])))
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "name":
            if self.peek()[0] == "op" and self.peek()[1] == "[":
                return self.block(t)
            name = t[1]
            if name in self.ctx.integers:
                return ("num", Fraction(int(self.ctx.integers[name])))
            if name not in self.ctx.symbols:
                raise UnknownSymbol(f"undeclared symbol {name!r}", t[2], self.text)
            return ("sym", name)
        self.i -= 1
        self.fail("expected a number, symbol or '('" if t[0] != "end" else "unexpected end of input")

    def block(self, name_tok):
        prefix = name_tok[1]
        if prefix not in self.ctx.prefixes:
            raise UnknownSymbol(f"unknown variable block {prefix!r}", name_tok[2], self.text)
        self.expect("[")
        vt = self.take()
        if vt[0] not in ("int", "name"):
            self.i -= 1
            self.fail("expected a vertex")
        vertex = int(vt[1]) if vt[0] == "int" else vt[1]
        self.expect(",")
        st = self.take()
        if st[0] != "int":
            self.i -= 1
            self.fail("expected a slot index")
        slot = int(st[1])
        self.expect("]")
        if self.ctx.vertices is not None and vertex not in self.ctx.vertices:
            raise UnknownSymbol(f"unknown vertex {vertex!r}", vt[2], self.text)
        if self.ctx.dim is not None and not 1 <= slot <= dim_get(self.ctx.dim, vertex):
            raise UnknownSymbol(f"slot {slot} out of range at vertex {vertex}", st[2], self.text)
        return ("sym", block_var(prefix, vertex, slot))


def _evaluate(node):
    kind = node[0]
    if kind == "num":
        return RatFunc.const(node[1])
    if kind == "sym":
        return RatFunc.var(node[1])
    if kind == "neg":
        return -_evaluate(node[1])
    if kind == "add":
        out = RatFunc.const(0)
        for sign, child in node[1]:
            v = _evaluate(child)
            out = out + v if sign > 0 else out - v
        return out
    if kind == "mul":
        out = RatFunc.const(1)
        for div, child in node[1]:
            out = out * (_invert(child) if div else _evaluate(child))
        return out
    if kind == "pow":
        _, base, n = node
        if n >= 0:
            return _evaluate(base) ** n
        return _invert(base) ** (-n)
    raise AssertionError(kind)


def _invert(node):
    """Reciprocal, keeping products of binomials factored."""
    kind = node[0]
    if kind == "num":
        if node[1] == 0:
            raise ZeroDivisionError("division by zero")
        return RatFunc.const(1 / node[1])
    if kind == "neg":
        return -_invert(node[1])
    if kind == "mul":
        out = RatFunc.const(1)
        for div, child in node[1]:
            out = out * (_evaluate(child) if div else _invert(child))
        return out
    if kind == "pow":
        _, base, n = node
        return _invert(base) ** n if n >= 0 else _evaluate(base) ** (-n)
    return _evaluate(node).inverse()


def parse_expr(text, context=None):
    """Parse ``text`` to an exact :class:`RatFunc`."""
    ctx = context or ParseContext()
    p = _Parser(text, ctx)
    try:
        return _evaluate(p.parse())
    except NonBinomialDenominator as exc:
        raise NonBinomialDenominator(str(exc), None, text) from None


__all__ = ["ParseContext", "parse_expr"]
