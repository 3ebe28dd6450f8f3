"""The decomposition pipeline.

A rational function is normalized (common factors cancelled, the
denominator split into primitive pairwise-coprime factors), every factor
d_i gets an inverse symbol q_i tied to it by the relation q_i*d_i = 1,
and the numerator times the q-monomial is reduced modulo a Gröbner basis
of those relations under a q-major block order. Substituting
q_i -> 1/d_i back into the reduced body gives the decomposition.
"""

from fractions import Fraction

from .errors import DivisionError, RingError, UnknownFactorError
from .groebner import GroebnerBasis, Ideal, buchberger, normal_form
from .order import MonomialOrder, apart_order
from .ring import (Polynomial, VarTable, divexact, gcd, grevlex_key,
                   poly_to_string, square_free_split)

ONE = Fraction(1)


def canonical_factor_key(f):
    """Sort key putting factor lists in a stable input-order-free order.

    Factors compare by their term sequence read from the least monomial
    up (monomial first, then coefficient), a proper prefix sorting
    before its extensions.
    """
    return tuple((grevlex_key(m), c) for m, c in reversed(f.terms))


################################################################
# Value types
################################################################

class RationalFunction:
    """constant * numerator / product(factor^multiplicity)."""

    __slots__ = ("numerator", "denominator_factors", "constant", "table")

    def __init__(self, numerator, denominator_factors, constant=ONE):
        factors = tuple((f, int(m)) for f, m in denominator_factors)
        table = numerator.table
        for f, m in factors:
            if f.table != table:
                raise RingError("factor ring does not match numerator")
            assert m > 0, "factor multiplicity must be positive"
            assert not f.is_constant(), "constant denominator factor"
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator_factors", factors)
        object.__setattr__(self, "constant", Fraction(constant))
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def denominator(self):
        d = Polynomial.constant(self.table, 1)
        for f, m in self.denominator_factors:
            d = d * f**m
        return d

    def as_pair(self):
        """(numerator, denominator) with the constant folded in."""
        return self.numerator * self.constant, self.denominator()

    def __repr__(self):
        num, den = self.as_pair()
        return "RationalFunction((%s)/(%s))" % (poly_to_string(num), poly_to_string(den))


class DenominatorSet:
    """Ordered factors with their inverse symbols.

    Factors live in the x-variable ring; `table` adjoins the symbols in
    front, which is where abbreviated bodies and bases live.
    """

    __slots__ = ("factors", "symbols", "x_table", "table")

    def __init__(self, factors, symbols=None):
        factors = tuple(factors)
        if factors:
            x_table = factors[0].table
        else:
            raise RingError("empty DenominatorSet needs an explicit table; "
                            "use DenominatorSet.empty")
        self._init(factors, symbols, x_table)

    @classmethod
    def empty(cls, x_table):
        obj = cls.__new__(cls)
        obj._init((), None, x_table)
        return obj

    def _init(self, factors, symbols, x_table):
        if symbols is None:
            symbols = tuple("q%d" % (i + 1) for i in range(len(factors)))
        else:
            symbols = tuple(symbols)
        assert len(symbols) == len(factors), "one symbol per factor"
        seen = set()
        for f in factors:
            if f.table != x_table:
                raise RingError("factors live in different rings")
            assert not f.is_constant(), "constant factor"
            assert f == f.monic_normalized(), "factor not sign-normalized primitive"
            key = f.terms
            assert key not in seen, "duplicate factor"
            seen.add(key)
        table = x_table.extend_front(symbols) if symbols else x_table
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "x_table", x_table)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("DenominatorSet is immutable")

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(zip(self.symbols, self.factors))

    def extended(self, new_factors):
        """New set with extra factors appended (symbols continue q<n+1>...)."""
        if not new_factors:
            return self
        return DenominatorSet(self.factors + tuple(new_factors))

    def ideal_generators(self):
        """The defining relations q_i*d_i - 1 over the combined table."""
        gens = []
        for sym, f in zip(self.symbols, self.factors):
            q = Polynomial.variable(self.table, sym)
            gens.append(q * f.map_to(self.table) - 1)
        return gens

    def substitutions(self):
        """Readable q_i -> 1/d_i lines."""
        out = []
        for sym, f in zip(self.symbols, self.factors):
            s = _atom_string(f, 1)
            if "*" in s:
                s = "(%s)" % s
            out.append("%s -> 1/%s" % (sym, s))
        return out

    def default_order_spec(self):
        return apart_order(self.factors, self.x_table.names)

    def __repr__(self):
        return "DenominatorSet(%s)" % ", ".join(
            "%s=1/(%s)" % (s, poly_to_string(f)) for s, f in self)


class AbbreviatedExpression:
    """A polynomial body in the inverse symbols plus its DenominatorSet."""

    __slots__ = ("body", "dens")

    def __init__(self, body, dens):
        if body.table != dens.table:
            raise RingError("body ring does not match denominator set")
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "dens", dens)

    def __setattr__(self, name, value):
        raise AttributeError("AbbreviatedExpression is immutable")

    def __repr__(self):
        return "AbbreviatedExpression(%s; %s)" % (
            poly_to_string(self.body), ", ".join(self.dens.substitutions()))


class Decomposition:
    """A finished decomposition: numerator over a factor-power product per term.

    Terms are kept in the order the restore step produced (ascending by
    the active order on the q-monomials); the term with no factors, if
    present, is the polynomial part.
    """

    __slots__ = ("terms", "x_table")

    def __init__(self, terms, x_table):
        object.__setattr__(self, "terms", tuple((n, tuple(fs)) for n, fs in terms))
        object.__setattr__(self, "x_table", x_table)

    def __setattr__(self, name, value):
        raise AttributeError("Decomposition is immutable")

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_pair(self):
        """Recombine over a common denominator: (numerator, denominator)."""
        table = self.x_table
        den = Polynomial.constant(table, 1)
        powers = {}
        for _, factors in self.terms:
            for f, m in factors:
                key = f.terms
                cur = powers.get(key)
                if cur is None or cur[1] < m:
                    powers[key] = (f, m)
        for f, m in powers.values():
            den = den * f**m
        num = Polynomial.zero(table)
        for n, factors in self.terms:
            part = den
            for f, m in factors:
                for _ in range(m):
                    part = divexact(part, f)
            num = num + n * part
        return num, den

    def to_string(self):
        if not self.terms:
            return "0"
        rendered = [_term_string(n, fs) for n, fs in self.terms]
        out = rendered[0]
        for t in rendered[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return "Decomposition(%s)" % self.to_string()


def _atom_string(f, power):
    s = poly_to_string(f)
    if len(f.terms) > 1:
        s = "(%s)" % s
    if power > 1:
        if len(f.terms) == 1 and ("*" in s or "^" in s):
            s = "(%s)" % s
        s = "%s^%d" % (s, power)
    return s


def _term_string(numerator, factors):
    if not factors:
        return poly_to_string(numerator)
    cont, prim = numerator.primitive()
    sign = "-" if cont < 0 else ""
    p = abs(cont.numerator)
    q = cont.denominator
    if prim.is_one():
        num_body = str(p)
    else:
        body = poly_to_string(prim)
        if len(prim.terms) > 1:
            body = "(%s)" % body
        num_body = body if p == 1 else "%d*%s" % (p, body)
    atoms = ([] if q == 1 else [str(q)]) + [_atom_string(f, m) for f, m in factors]
    den = "*".join(atoms)
    # a bare product would bind wrong after the division slash
    if "*" in den:
        den = "(%s)" % den
    return "%s%s/%s" % (sign, num_body, den)


################################################################
# Algorithm steps
################################################################

def _den_pieces(denominator):
    """Normalize a denominator argument to ((piece, power), ...) structure.

    Accepts a plain Polynomial, a sequence of piece polynomials, or a
    sequence of (piece, power) pairs. The multiplicative structure is
    significant: pieces seen separately can be told apart later even
    when full irreducible factorization would be needed to split their
    product.
    """
    if isinstance(denominator, Polynomial):
        return ((denominator, 1),)
    out = []
    for item in denominator:
        if isinstance(item, Polynomial):
            out.append((item, 1))
        else:
            f, m = item
            assert m >= 1, "piece power must be positive"
            out.append((f, int(m)))
    return tuple(out)


def _structured_gcd(numerator, pieces):
    """GCD of numerator with the product of the pieces, taken piecewise.

    Equal to gcd(numerator, prod f^m) by greedy cancellation, but every
    gcd call involves one small piece instead of the expanded product,
    whose pseudo-remainder sequence can swell badly.
    """
    g = Polynomial.constant(numerator.table, 1)
    rem = numerator
    for f, m in pieces:
        if f.is_constant():
            continue
        for _ in range(m):
            h = gcd(rem, f)
            if h.is_constant():
                break
            rem = divexact(rem, h)
            g = g * h
    return g


def normalize_and_factor(numerator, denominator):
    """Cancel the numerator/denominator GCD and split the denominator.

    The denominator may be structured (see _den_pieces); its pieces,
    square-free split and refined by pairwise GCDs (also against the
    cancelled GCD), become the working factor set. All rational content
    and sign folds into the numerator, so the result's constant is 1 and
    its factors are primitive, positive-lead, pairwise coprime, in
    canonical factor order.
    """
    pieces = _den_pieces(denominator)
    table = numerator.table
    den_full = Polynomial.constant(table, 1)
    for f, m in pieces:
        if f.is_zero():
            raise DivisionError("zero denominator")
        numerator._check_table(f)
        den_full = den_full * f**m
    if numerator.is_zero():
        return RationalFunction(numerator, ())
    g = _structured_gcd(numerator, pieces)
    if not g.is_constant():
        numerator = divexact(numerator, g)
        den_full = divexact(den_full, g)
    pool = []
    for f, _ in pieces:
        if not f.is_constant():
            pool.extend(p for p, _ in square_free_split(f))
    if not g.is_constant():
        pool.extend(p for p, _ in square_free_split(g))
    factors = sorted(_refine(pool), key=canonical_factor_key)
    powers, leftover = _peel(den_full, factors)
    assert leftover.is_constant(), "denominator escaped its own factor pool"
    numerator = numerator * (ONE / leftover.constant_value())
    return RationalFunction(numerator,
                            [(f, e) for f, e in zip(factors, powers) if e])


def _peel(den, factors):
    """Divide den by known factors as often as possible.

    Returns (powers vector, leftover) with den == leftover * prod f^e.
    """
    powers = [0] * len(factors)
    for i, f in enumerate(factors):
        while True:
            try:
                den = divexact(den, f)
            except DivisionError:
                break
            powers[i] += 1
    return powers, den


def _refine(pieces):
    """GCD-closure of a factor list: split until pairwise coprime."""
    work = [p for p in pieces if not p.is_constant()]
    out = []
    while work:
        f = work.pop()
        again = False
        for i, g in enumerate(out):
            h = gcd(f, g)
            if h.is_constant():
                continue
            rest_f = divexact(f, h)
            rest_g = divexact(g, h)
            del out[i]
            for piece in (h, rest_f, rest_g):
                if not piece.is_constant():
                    work.append(piece.monic_normalized())
            again = True
            break
        if not again:
            out.append(f.monic_normalized())
    seen = set()
    uniq = []
    for f in out:
        if f.terms not in seen:
            seen.add(f.terms)
            uniq.append(f)
    return uniq


def abbreviate_denominators(terms, x_table=None, known=None, strict=False):
    """Replace denominators with inverse symbols across a sum of quotients.

    `terms` is a sequence of (numerator, denominator) Polynomial pairs
    (a RationalFunction or a single pair also works). Known factors keep
    their symbols; new ones are appended in canonical order. In strict
    mode a denominator that does not split over `known` raises
    UnknownFactorError naming the leftover.
    """
    if isinstance(terms, RationalFunction):
        terms = [(terms.numerator * terms.constant, terms.denominator_factors)]
    elif terms and isinstance(terms[0], Polynomial):
        terms = [tuple(terms)]
    terms = [(n, d) for n, d in terms]
    if x_table is None:
        if terms:
            x_table = terms[0][0].table
        elif known is not None:
            x_table = known.x_table
        else:
            raise RingError("cannot infer the variable table")

    prepared = []
    pieces = []
    for num, den in terms:
        struct = _den_pieces(den)
        den_full = Polynomial.constant(x_table, 1)
        for f, m in struct:
            if f.is_zero():
                raise DivisionError("zero denominator")
            den_full = den_full * f**m
        g = _structured_gcd(num, struct)
        if not g.is_constant():
            num = divexact(num, g)
            den_full = divexact(den_full, g)
        cont, prim = den_full.primitive()
        num = num * (ONE / cont)
        prepared.append((num, prim))
        for f, _ in struct:
            if not f.is_constant():
                pieces.extend(p for p, _ in square_free_split(f))
        if not g.is_constant():
            pieces.extend(p for p, _ in square_free_split(g))

    base = known if known is not None else DenominatorSet.empty(x_table)
    if strict:
        if known is None:
            raise UnknownFactorError("strict abbreviation requires a factor set")
        new_factors = []
    else:
        candidates = _refine(list(base.factors) + pieces)
        known_keys = {f.terms for f in base.factors}
        new_factors = [f for f in candidates if f.terms not in known_keys]
        new_factors.sort(key=canonical_factor_key)
        # keep only pieces some denominator actually uses
        trial = list(base.factors) + new_factors
        used = set()
        for _, den in prepared:
            powers, leftover = _peel(den, trial)
            if leftover.is_constant():
                used.update(i for i, e in enumerate(powers) if e)
        nknown = len(base.factors)
        new_factors = [f for i, f in enumerate(new_factors) if nknown + i in used]
    dens = base.extended(new_factors)

    table = dens.table
    body = Polynomial.zero(table)
    for num, den in prepared:
        powers, leftover = _peel(den, dens.factors)
        if not leftover.is_constant():
            raise UnknownFactorError(
                "denominator factor not in the declared set: %s"
                % poly_to_string(leftover))
        mon = [0] * len(table)
        for i, e in enumerate(powers):
            if e:
                mon[table.index[dens.symbols[i]]] = e
        qmon = Polynomial.monomial(table, mon, ONE / leftover.constant_value())
        body = body + num.map_to(table) * qmon
    return AbbreviatedExpression(body, dens)


def apart_basis(dens, spec=None):
    """Gröbner basis of the inverse-symbol relations under the block order."""
    if spec is None:
        spec = dens.default_order_spec()
    order = MonomialOrder.from_spec(spec, dens.table)
    gens = dens.ideal_generators()
    if not gens:
        return GroebnerBasis((), order, reduced=True)
    return buchberger(Ideal(gens), order)


def apart_reduce(expr, basis):
    """Replace the body by its unique normal form."""
    return AbbreviatedExpression(normal_form(expr.body, basis), expr.dens)


def apart_reduce_iterated(numerator, qpowers, basis, partition_size=None):
    """Reduce numerator * prod q_i^a_i by folding in one symbol at a time.

    qpowers maps symbols to exponents (dict or pair sequence). Symbols
    are multiplied in ascending order (the active order's view of the
    bare symbols), reducing after each multiplication; with a finite
    partition_size each reduction pass splits the working sum into
    chunks of at most that many terms, reduces them independently and
    recombines. The result equals the direct normal form.
    """
    order = basis.order
    table = order.table
    if isinstance(qpowers, dict):
        qpowers = list(qpowers.items())
    assert partition_size is None or partition_size >= 1

    def unit(sym):
        mon = [0] * len(table)
        mon[table.index[sym]] = 1
        return tuple(mon)

    qpowers = sorted(qpowers, key=lambda sp: order.key(unit(sp[0])))

    def reduce_chunked(p):
        if partition_size is None or len(p.terms) <= partition_size:
            return normal_form(p, basis)
        total = Polynomial.zero(table)
        terms = p.terms
        for i in range(0, len(terms), partition_size):
            chunk = Polynomial(table, terms[i:i + partition_size])
            total = total + normal_form(chunk, basis)
        return total

    working = numerator.map_to(table)
    for sym, power in qpowers:
        assert power >= 0, "negative symbol power"
        if power == 0:
            continue
        q = Polynomial.variable(table, sym)
        working = reduce_chunked(working * q**power)
    return normal_form(working, basis)


def restore(body, dens, order):
    """Substitute q_i -> 1/d_i: group the reduced body by q-exponents.

    Terms come out ascending by the active order on their q-monomials,
    the polynomial part (no symbols) first.
    """
    table = dens.table
    x_table = dens.x_table
    qpos = [table.index[s] for s in dens.symbols]
    qset = set(qpos)
    groups = {}
    for mon, coeff in body.terms:
        qexp = tuple(mon[i] for i in qpos)
        xmon = tuple(0 if i in qset else e for i, e in enumerate(mon))
        groups.setdefault(qexp, {})[xmon] = coeff

    def qmon_key(qexp):
        mon = [0] * len(table)
        for p, e in zip(qpos, qexp):
            mon[p] = e
        return order.key(tuple(mon))

    terms = []
    for qexp in sorted(groups, key=qmon_key):
        num = Polynomial(table, groups[qexp]).map_to(x_table)
        factors = tuple((dens.factors[i], e) for i, e in enumerate(qexp) if e)
        terms.append((num, factors))
    return Decomposition(terms, x_table)


################################################################
# End-to-end entry points
################################################################

def multivariate_abbreviated_apart(numerator, denominator, known=None,
                                   order_spec=None, partition_size=None):
    """Decompose but keep the inverse symbols: returns the reduced
    AbbreviatedExpression and the order it was reduced under."""
    r = normalize_and_factor(numerator, denominator)
    expr = abbreviate_denominators(r, x_table=r.table, known=known)
    if order_spec is None:
        order_spec = expr.dens.default_order_spec()
    basis = apart_basis(expr.dens, order_spec)
    if partition_size is None or not expr.body.terms:
        reduced = apart_reduce(expr, basis)
    else:
        # a single normalized quotient's body is numerator * q-monomial,
        # exactly the shape the iterated scheme expects
        table = expr.dens.table
        qpos = [table.index[s] for s in expr.dens.symbols]
        qexp = tuple(expr.body.terms[0][0][i] for i in qpos)
        qset = set(qpos)
        xnum = Polynomial(table, {
            tuple(0 if i in qset else e for i, e in enumerate(mon)): c
            for mon, c in expr.body.terms})
        qpowers = {expr.dens.symbols[i]: e for i, e in enumerate(qexp) if e}
        body = apart_reduce_iterated(xnum, qpowers, basis,
                                     partition_size=partition_size)
        reduced = AbbreviatedExpression(body, expr.dens)
    return reduced, basis.order


def multivariate_apart(numerator, denominator, known=None, order_spec=None,
                       partition_size=None):
    """Full pipeline: normalize, abbreviate, reduce, restore."""
    reduced, order = multivariate_abbreviated_apart(
        numerator, denominator, known=known, order_spec=order_spec,
        partition_size=partition_size)
    return restore(reduced.body, reduced.dens, order)
