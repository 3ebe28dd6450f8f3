"""Expression grammar for rational functions.

Precedence: ^ binds tighter than unary minus, then * and /, then + and -.
Juxtaposition ("2y") is rejected unless implicit multiplication is
switched on; exponents must be non-negative integers, so reciprocals are
written as explicit divisions. The parser keeps the multiplicative
structure of denominators, which downstream factor handling relies on.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from ..ring import Polynomial, VarTable

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*/^()]))")


class Node:
    """Base expression node; `pos` points into the source text."""

    __slots__ = ("pos",)

    def __init__(self, pos):
        object.__setattr__(self, "pos", pos)

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self._key())


class Num(Node):
    __slots__ = ("value",)

    def __init__(self, value, pos=0):
        super().__init__(pos)
        object.__setattr__(self, "value", Fraction(value))

    def _key(self):
        return self.value


class Var(Node):
    __slots__ = ("name",)

    def __init__(self, name, pos=0):
        super().__init__(pos)
        object.__setattr__(self, "name", name)

    def _key(self):
        return self.name


class Add(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right, pos=0):
        super().__init__(pos)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.left, self.right)


class Mul(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right, pos=0):
        super().__init__(pos)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.left, self.right)


class Div(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right, pos=0):
        super().__init__(pos)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.left, self.right)


class Pow(Node):
    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent, pos=0):
        super().__init__(pos)
        assert int(exponent) >= 0, "negative exponents are spelled as divisions"
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exponent", int(exponent))

    def _key(self):
        return (self.base, self.exponent)


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            tail = text[i:].lstrip()
            if not tail:
                break
            pos = len(text) - len(tail)
            raise ParseError("unexpected character %r" % tail[0], pos)
        if m.group("num") is not None:
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        i = m.end()
    return out


class _Parser:
    def __init__(self, text, implicit_mul):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.implicit_mul = implicit_mul

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            pos = tok[2] if tok else len(self.text)
            raise ParseError("expected %r" % op, pos)
        self.i += 1

    def starts_atom(self, tok):
        return tok is not None and (
            tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("))

    def expression(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                rhs = self.term()
                if tok[1] == "-":
                    rhs = Mul(Num(-1, tok[2]), rhs, tok[2])
                node = Add(node, rhs, tok[2])
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "op" and tok[1] in "*/":
                self.i += 1
                rhs = self.unary()
                cls = Mul if tok[1] == "*" else Div
                node = cls(node, rhs, tok[2])
            elif self.starts_atom(tok):
                if not self.implicit_mul:
                    raise ParseError(
                        "missing operator (implicit multiplication is "
                        "disabled: write 2*y)", tok[2])
                node = Mul(node, self.unary(), tok[2])
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            inner = self.unary()
            if tok[1] == "-":
                return Mul(Num(-1, tok[2]), inner, tok[2])
            return inner
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            exponent, pos = self.exponent(base)
            return Pow(base, exponent, pos)
        return base

    def exponent(self, base):
        tok = self.next()
        negative = False
        parens = False
        if tok[0] == "op" and tok[1] == "(":
            parens = True
            tok = self.next()
        if tok[0] == "op" and tok[1] == "-":
            negative = True
            tok = self.next()
        if tok[0] != "num":
            raise ParseError("exponent must be an integer", tok[2])
        if negative:
            raise ParseError(
                "negative exponent: write 1/%s" % to_string(base), tok[2])
        if parens:
            self.expect_op(")")
        return int(tok[1]), tok[2]

    def atom(self):
        tok = self.next()
        if tok[0] == "num":
            return Num(int(tok[1]), tok[2])
        if tok[0] == "name":
            return Var(tok[1], tok[2])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expression()
            self.expect_op(")")
            return node
        raise ParseError("unexpected %r" % tok[1], tok[2])


def parse(text, implicit_mul=False):
    """Parse an expression into an AST; errors carry source positions."""
    p = _Parser(text, implicit_mul)
    node = p.expression()
    tok = p.peek()
    if tok is not None:
        raise ParseError("trailing input %r" % tok[1], tok[2])
    return node


################################################################
# printing
################################################################

_PREC = {"add": 1, "mul": 2, "unary": 3, "pow": 4, "atom": 5}


def _print(node, ctx):
    if isinstance(node, Num):
        v = node.value
        if v < 0:
            s = "-" + _print(Num(-v), "atom")
            return "(%s)" % s if ctx in ("pow", "atom") else s
        if v.denominator != 1:
            s = "%d/%d" % (v.numerator, v.denominator)
            return "(%s)" % s if ctx in ("pow", "atom") else s
        return str(v.numerator)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Pow):
        s = "%s^%d" % (_print(node.base, "pow"), node.exponent)
        return "(%s)" % s if ctx in ("pow", "atom") else s
    if isinstance(node, Mul):
        if isinstance(node.left, Num) and node.left.value == -1:
            inner = _print(node.right, "unary")
            s = "-" + inner
            return "(%s)" % s if ctx in ("mul", "pow", "atom") else s
        s = "%s*%s" % (_print(node.left, "mul"), _print(node.right, "mul"))
        return "(%s)" % s if ctx in ("pow", "atom") else s
    if isinstance(node, Div):
        s = "%s/%s" % (_print(node.left, "mul"), _print(node.right, "pow"))
        return "(%s)" % s if ctx in ("pow", "atom") else s
    if isinstance(node, Add):
        right = node.right
        if isinstance(right, Mul) and isinstance(right.left, Num) \
                and right.left.value == -1:
            s = "%s - %s" % (_print(node.left, "add"),
                             _print(right.right, "unary"))
        else:
            s = "%s + %s" % (_print(node.left, "add"), _print(right, "add"))
        return "(%s)" % s if ctx != "add" else s
    raise TypeError("not an expression node: %r" % (node,))


def to_string(node):
    """Canonical rendering; parse(to_string(parse(s))) is a fixed point."""
    return _print(node, "add")


################################################################
# names and evaluation
################################################################

def collect_names(node):
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Pow):
        return collect_names(node.base)
    return collect_names(node.left) | collect_names(node.right)


def _name_key(name):
    m = re.fullmatch(r"(.*?)(\d+)", name)
    if m:
        return (m.group(1), 1, int(m.group(2)))
    return (name, 0, 0)


def default_table(names):
    """Variable table sorted with numeric suffixes in numeric order."""
    return VarTable(tuple(sorted(names, key=_name_key)))


class Quotient:
    """numerator / product of structured pieces, exponents positive."""

    __slots__ = ("numerator", "pieces")

    def __init__(self, numerator, pieces=()):
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "pieces", tuple(pieces))

    def __setattr__(self, name, value):
        raise AttributeError("Quotient is immutable")


def _merge_pieces(a, b):
    """Union with per-piece maximum power; returns (common, scale_a, scale_b)."""
    keys = []
    seen = {}
    for f, e in a + b:
        if f.terms not in seen:
            seen[f.terms] = [f, 0, 0]
            keys.append(f.terms)
    for f, e in a:
        seen[f.terms][1] += e
    for f, e in b:
        seen[f.terms][2] += e
    common = []
    table = None
    for k in keys:
        f, ea, eb = seen[k]
        table = f.table
        common.append((f, max(ea, eb)))
    def scale(own):
        out = None
        for (f, e), k in zip(common, keys):
            lack = e - seen[k][own]
            if lack:
                part = f**lack
                out = part if out is None else out * part
        return out
    return common, scale(1), scale(2)


def _mul_quotients(a, b):
    pieces = {}
    order = []
    for f, e in a.pieces + b.pieces:
        if f.terms not in pieces:
            order.append(f.terms)
            pieces[f.terms] = [f, 0]
        pieces[f.terms][1] += e
    return Quotient(a.numerator * b.numerator,
                    [(pieces[k][0], pieces[k][1]) for k in order])


def _invert_quotient(q, pos):
    if q.numerator.is_zero():
        raise ParseError("zero denominator", pos)
    num = Polynomial.constant(q.numerator.table, 1)
    for f, e in q.pieces:
        num = num * f**e
    if q.numerator.is_constant():
        return Quotient(num * (Fraction(1) / q.numerator.constant_value()))
    return Quotient(num, ((q.numerator, 1),))


def _reciprocal(node, table):
    """Quotient for 1/node, keeping node's multiplicative structure.

    Walking the AST instead of inverting the evaluated product is what
    keeps written denominator factors available as separate pieces.
    """
    if isinstance(node, Mul):
        return _mul_quotients(_reciprocal(node.left, table),
                              _reciprocal(node.right, table))
    if isinstance(node, Pow):
        if node.exponent == 0:
            return Quotient(Polynomial.constant(table, 1))
        base = _reciprocal(node.base, table)
        n = node.exponent
        return Quotient(base.numerator**n,
                        [(f, e * n) for f, e in base.pieces])
    if isinstance(node, Div):
        # 1/(a/b) = b/a, defined only when b is not the zero expression
        flip = evaluate(node.right, table)
        if flip.numerator.is_zero():
            raise ParseError("zero denominator", node.right.pos)
        return _mul_quotients(flip, _reciprocal(node.left, table))
    return _invert_quotient(evaluate(node, table), node.pos)


def evaluate(node, table):
    """Structured quotient of the expression over the given table."""
    if isinstance(node, Num):
        return Quotient(Polynomial.constant(table, node.value))
    if isinstance(node, Var):
        return Quotient(Polynomial.variable(table, node.name))
    if isinstance(node, Pow):
        base = evaluate(node.base, table)
        n = node.exponent
        if n == 0:
            return Quotient(Polynomial.constant(table, 1))
        return Quotient(base.numerator**n,
                        [(f, e * n) for f, e in base.pieces])
    if isinstance(node, Mul):
        return _mul_quotients(evaluate(node.left, table),
                              evaluate(node.right, table))
    if isinstance(node, Div):
        return _mul_quotients(evaluate(node.left, table),
                              _reciprocal(node.right, table))
    if isinstance(node, Add):
        a = evaluate(node.left, table)
        b = evaluate(node.right, table)
        common, sa, sb = _merge_pieces(a.pieces, b.pieces)
        na = a.numerator if sa is None else a.numerator * sa
        nb = b.numerator if sb is None else b.numerator * sb
        return Quotient(na + nb, common)
    raise TypeError("not an expression node: %r" % (node,))


def split_terms(node):
    """Top-level addends, left to right."""
    if isinstance(node, Add):
        return split_terms(node.left) + split_terms(node.right)
    return [node]
