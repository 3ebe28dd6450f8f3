"""Monomial comparison: lex, degrevlex, and block orders.

A block order splits the variable table into ordered groups; earlier
blocks dominate later ones, and an inner rule (degrevlex or lex) breaks
ties inside each block. Orders compare monomials through a sort key, so
`max(terms, key=order.key)` picks the leading term.

The module also builds the optimized block order for a denominator set
(each factor's inverse symbol placed by variable support and degree) and
the human-readable nested-braces spec format, e.g. {{q3,q1},{q2},{x,y}}.
"""

from .errors import ParseError, RingError
from .ring import grevlex_key

DEGREVLEX = "degrevlex"
LEX = "lex"


################################################################
# Order specs (nested tuples of variable names)
################################################################

def parse_order_spec(text):
    """Parse `{{q3,q1},{q2},{x,y}}` into a tuple of name tuples.

    Whitespace between tokens is fine; empty blocks and trailing commas
    are not.
    """
    s = text
    n = len(s)
    pos = 0

    def fail(msg, at):
        raise ParseError(msg, at)

    def skip():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    skip()
    if pos >= n or s[pos] != "{":
        fail("order spec must start with '{'", pos)
    pos += 1
    blocks = []
    skip()
    if pos < n and s[pos] == "}":
        pos += 1
    else:
        while True:
            skip()
            if pos >= n or s[pos] != "{":
                fail("expected '{' opening a block", pos)
            pos += 1
            names = []
            while True:
                skip()
                start = pos
                while pos < n and (s[pos].isalnum() or s[pos] == "_"):
                    pos += 1
                if pos == start:
                    fail("expected a variable name", pos)
                names.append(s[start:pos])
                skip()
                if pos < n and s[pos] == ",":
                    pos += 1
                    continue
                if pos < n and s[pos] == "}":
                    pos += 1
                    break
                fail("expected ',' or '}' in block", pos)
            blocks.append(tuple(names))
            skip()
            if pos < n and s[pos] == ",":
                pos += 1
                continue
            if pos < n and s[pos] == "}":
                pos += 1
                break
            fail("expected ',' or '}' after a block", pos)
    skip()
    if pos != n:
        fail("trailing text after order spec", pos)
    if not blocks:
        fail("order spec has no blocks", 0)
    flat = [name for blk in blocks for name in blk]
    if len(set(flat)) != len(flat):
        fail("variable repeated in order spec", 0)
    return tuple(blocks)


def format_order_spec(spec):
    """Inverse of parse_order_spec; no whitespace."""
    return "{%s}" % ",".join("{%s}" % ",".join(blk) for blk in spec)


################################################################
# Block monomial orders
################################################################

class MonomialOrder:
    """A block order over a VarTable.

    blocks holds variable names, greatest block first; rules holds the
    inner comparison per block. The blocks must partition the table.
    """

    def __init__(self, table, blocks, rules=None):
        blocks = tuple(tuple(b) for b in blocks)
        if rules is None:
            rules = (DEGREVLEX,) * len(blocks)
        else:
            rules = tuple(rules)
        assert len(rules) == len(blocks), "one inner rule per block"
        for r in rules:
            assert r in (DEGREVLEX, LEX), "unknown inner rule %r" % r
        flat = [name for blk in blocks for name in blk]
        if len(flat) != len(set(flat)):
            raise RingError("variable repeated across blocks")
        if set(flat) != set(table.names):
            missing = set(table.names) - set(flat)
            extra = set(flat) - set(table.names)
            raise RingError("blocks must partition the ring variables"
                            + (" (missing %s)" % ", ".join(sorted(missing)) if missing else "")
                            + (" (unknown %s)" % ", ".join(sorted(extra)) if extra else ""))
        for blk in blocks:
            if not blk:
                raise RingError("empty block in order")
        self.table = table
        self.blocks = blocks
        self.rules = rules
        self._idx = tuple(tuple(table.index[name] for name in blk) for blk in blocks)
        self._rev_idx = tuple(tuple(reversed(ix)) for ix in self._idx)
        self._cache = {}

    @classmethod
    def degrevlex(cls, table):
        """Plain degrevlex over the whole table as a single block."""
        return cls(table, (table.names,) if table.names else ())

    @classmethod
    def from_spec(cls, spec, table, rules=None):
        if isinstance(spec, str):
            spec = parse_order_spec(spec)
        return cls(table, spec, rules)

    def spec(self):
        return self.blocks

    def __eq__(self, other):
        if not isinstance(other, MonomialOrder):
            return NotImplemented
        return (self.table == other.table and self.blocks == other.blocks
                and self.rules == other.rules)

    def __hash__(self):
        return hash((self.table, self.blocks, self.rules))

    def __repr__(self):
        return "MonomialOrder(%s)" % format_order_spec(self.blocks)

    # -- comparison ----------------------------------------------------

    def key(self, mon):
        """Sort key; a greater key means a greater monomial."""
        k = self._cache.get(mon)
        if k is None:
            parts = []
            for bi, rule in enumerate(self.rules):
                if rule == DEGREVLEX:
                    ix = self._idx[bi]
                    parts.append((sum(mon[i] for i in ix),
                                  tuple(-mon[i] for i in self._rev_idx[bi])))
                else:
                    parts.append(tuple(mon[i] for i in self._idx[bi]))
            k = tuple(parts)
            self._cache[mon] = k
        return k

    def compare(self, a, b):
        """-1, 0 or 1 as monomial a is less than, equal to, or greater than b."""
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def leading_term(self, f):
        """Greatest (monomial, coefficient) of a nonzero polynomial."""
        assert f.terms, "zero polynomial has no leading term"
        assert f.table == self.table, "polynomial ring does not match order"
        return max(f.terms, key=lambda t: self.key(t[0]))

    def leading_monomial(self, f):
        return self.leading_term(f)[0]

    def sorted_terms(self, f):
        """Terms greatest first."""
        return sorted(f.terms, key=lambda t: self.key(t[0]), reverse=True)


################################################################
# Optimized order for a denominator set
################################################################

def _series_key(f):
    """Canonical term sequence, greatest term first, monomials then coefficients.

    Tuple comparison on these realizes "larger series first": compare
    leading monomials, then leading coefficients, then the next term,
    with a longer sequence beating its proper prefix.
    """
    return tuple((grevlex_key(m), c) for m, c in f.terms)


def apart_order(factors, x_names):
    """Build the block order spec for a factored denominator set.

    `factors` is the ordered list of distinct denominator factors
    (polynomials in the x-variables); the symbol q<i+1> stands for the
    inverse of factors[i]. Factors are grouped by exact variable
    support; groups with more variables come first, ties broken by
    degree content and support position; inside a group higher total
    degree comes first, then the larger term sequence. A final block
    holds all x-variables. Inner rule is degrevlex everywhere, so the
    result feeds MonomialOrder.from_spec directly.
    """
    x_names = tuple(x_names)
    if not factors:
        # a constant expression may live in a ring with no variables at
        # all; blocks must stay nonempty, so the spec is just shorter
        return (x_names,) if x_names else ()
    table = factors[0].table
    groups = {}
    for pos, f in enumerate(factors):
        assert not f.is_constant(), "constant factor has no inverse symbol"
        support = tuple(sorted(table.index[v] for v in f.variables_used()))
        groups.setdefault(support, []).append((pos, f))
    degrees = {pos: f.total_degree() for pos, f in enumerate(factors)}

    def group_key(item):
        support, members = item
        degs = [degrees[pos] for pos, _ in members]
        return (len(support), max(degs), sum(degs), support)

    def member_key(member):
        pos, f = member
        return (degrees[pos], _series_key(f))

    blocks = []
    for support, members in sorted(groups.items(), key=group_key, reverse=True):
        members = sorted(members, key=member_key, reverse=True)
        blocks.append(tuple("q%d" % (pos + 1) for pos, _ in members))
    if x_names:
        blocks.append(x_names)
    return tuple(blocks)


def promote_spurious(spec, spurious):
    """Move the given symbols into a single new greatest block.

    Relative order of everything else is preserved; blocks emptied by
    the move disappear. Used to retry a reduction with the inverse
    symbols of unwanted factors dominating all others, which lets the
    basis eliminate them.
    """
    spurious = tuple(spurious)
    flat = {name for blk in spec for name in blk}
    unknown = [s for s in spurious if s not in flat]
    if unknown:
        raise RingError("unknown symbols in order spec: %s" % ", ".join(unknown))
    if not spurious:
        return tuple(tuple(blk) for blk in spec)
    moved = set(spurious)
    front = tuple(name for blk in spec for name in blk if name in moved)
    rest = []
    for blk in spec:
        kept = tuple(name for name in blk if name not in moved)
        if kept:
            rest.append(kept)
    return (front,) + tuple(rest)
