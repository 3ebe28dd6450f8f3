"""Buchberger completion, reduced bases, and normal-form reduction.

The reduction engine does full multi-term reduction: at every step the
greatest still-reducible term is cancelled, so the remainder ends with
no term divisible by any reducer's leading monomial. A cofactor-tracking
mode records how every output polynomial combines the inputs, which is
what turns a unit basis element into an explicit certificate
1 = sum h_i * g_i.
"""

import heapq
from fractions import Fraction

from .errors import RingError
from .ring import (Polynomial, mon_div, mon_divides, mon_lcm, mon_mul,
                   poly_to_string)

ONE = Fraction(1)


################################################################
# Containers
################################################################

class Ideal:
    """A finitely generated ideal, kept as its generator list."""

    __slots__ = ("generators", "table")

    def __init__(self, generators):
        gens = tuple(generators)
        assert gens, "ideal needs at least one generator"
        table = gens[0].table
        for g in gens:
            if g.table != table:
                raise RingError("generators live in different rings")
            assert not g.is_zero(), "zero generator"
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "Ideal(%d generators over %r)" % (len(self.generators), self.table)


class GroebnerBasis:
    """Basis elements plus the order they were computed under.

    `reduced` records whether the elements form a reduced Gröbner basis;
    only then is normal_form against it a unique remainder. Raw
    generator sets can be wrapped with reduced=False to reuse the
    reduction engine, with sequence-dependent remainders.
    """

    __slots__ = ("elements", "order", "reduced")

    def __init__(self, elements, order, reduced):
        elements = tuple(elements)
        for e in elements:
            if e.table != order.table:
                raise RingError("basis element ring does not match order")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "reduced", bool(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("GroebnerBasis is immutable")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def contains_one(self):
        return any(e.is_constant() and not e.is_zero() for e in self.elements)

    def to_lines(self):
        """One canonical polynomial string per element."""
        return [poly_to_string(e) for e in self.elements]

    def __repr__(self):
        return "GroebnerBasis(%d elements, %r, reduced=%s)" % (
            len(self.elements), self.order, self.reduced)


def contains_one(basis):
    """True iff the basis (hence the ideal) contains a nonzero constant."""
    return basis.contains_one()


################################################################
# Reduction
################################################################

def _normalize(f, order):
    """Integer-primitive coefficients, positive leading coefficient."""
    if f.is_zero():
        return f
    cont = f.rational_content()
    if order.leading_term(f)[1] < 0:
        cont = -cont
    return f * (ONE / cont)


def s_polynomial(f, g, order):
    """The classic cancellation combination of two generators."""
    f._check_table(g)
    lmf, lcf = order.leading_term(f)
    lmg, lcg = order.leading_term(g)
    l = mon_lcm(lmf, lmg)
    table = f.table
    mf = Polynomial.monomial(table, mon_div(l, lmf), ONE / lcf)
    mg = Polynomial.monomial(table, mon_div(l, lmg), ONE / lcg)
    return mf * f - mg * g


class _Reducer:
    """Prepared reducer list bound to one order, shared across calls."""

    __slots__ = ("order", "table", "rows")

    def __init__(self, polys, order):
        self.order = order
        self.table = order.table
        rows = []
        for i, g in enumerate(polys):
            lm, lc = order.leading_term(g)
            tail = tuple(t for t in g.terms if t[0] != lm)
            rows.append((lm, lc, tail, i))
        self.rows = rows

    def reduce_full(self, p, cofactors=None):
        """Fully reduce p; optionally accumulate per-reducer cofactors.

        Every monomial entering the work heap is strictly below the one
        being cancelled, so each monomial is inspected exactly once and
        settled terms never reappear.
        """
        key = self.order.key
        work = dict(p.terms)
        done = {}
        rows = self.rows
        while work:
            m = max(work, key=key)
            c = work.pop(m)
            for lm, lc, tail, i in rows:
                if mon_divides(lm, m):
                    ratio = mon_div(m, lm)
                    coeff = c / lc
                    for tm, tc in tail:
                        t = mon_mul(ratio, tm)
                        cur = work.get(t)
                        if cur is None:
                            work[t] = -coeff * tc
                        else:
                            cur = cur - coeff * tc
                            if cur:
                                work[t] = cur
                            else:
                                del work[t]
                    if cofactors is not None:
                        row = cofactors[i]
                        row[ratio] = row.get(ratio, 0) + coeff
                    break
            else:
                done[m] = c
        return Polynomial(self.table, done)


def normal_form(p, basis):
    """Remainder of p modulo the basis under the basis order.

    No term of the result is divisible by any element's leading
    monomial. Unique exactly when `basis.reduced` holds; against a raw
    generator set the value depends on the reduction sequence.
    """
    if p.is_zero() or not len(basis):
        return p
    return _Reducer(basis.elements, basis.order).reduce_full(p)


def normal_form_with_cofactors(p, gens, order):
    """Reduce p, returning (remainder, cofactors) with
    p == sum(cofactors[i] * gens[i]) + remainder, bit-exact.

    gens may be any generator sequence (an Ideal works); uniqueness of
    the remainder again requires a reduced Gröbner basis.
    """
    gens = tuple(gens)
    table = order.table
    if p.is_zero() or not gens:
        return p, tuple(Polynomial.zero(table) for _ in gens)
    red = _Reducer(gens, order)
    rows = [dict() for _ in gens]
    r = red.reduce_full(p, cofactors=rows)
    return r, tuple(Polynomial(table, row) for row in rows)


################################################################
# Completion
################################################################

def buchberger(ideal, order):
    """Reduced Gröbner basis of the ideal under the given order.

    Pair selection follows the normal strategy (smallest lcm first);
    coprime-leading-monomial pairs are skipped outright and the chain
    criterion prunes pairs whose lcm is covered by an already-settled
    third element. The result is autoreduced, normalized to
    integer-primitive positive-lead elements, and sorted ascending by
    leading monomial, which makes it deterministic.
    """
    gens = ideal.generators if isinstance(ideal, Ideal) else tuple(ideal)
    elements, _ = _completion(gens, order, track=False)
    return GroebnerBasis(elements, order, reduced=True)


def buchberger_with_cofactors(ideal, order):
    """Like buchberger, plus one cofactor row per basis element.

    rows[j] holds polynomials with elements[j] == sum over i of
    rows[j][i] * gens[i]; the identity is bit-exact and is what callers
    use to turn a constant basis element into a unit certificate.
    """
    gens = ideal.generators if isinstance(ideal, Ideal) else tuple(ideal)
    elements, rows = _completion(gens, order, track=True)
    return GroebnerBasis(elements, order, reduced=True), rows


def _completion(gens, order, track):
    table = order.table
    zero = Polynomial.zero(table)

    basis = []          # list of polynomials
    rows = []           # parallel cofactor rows (list of Polynomial per element)
    ngen = len(gens)

    def unit_row(i):
        return [zero] * i + [Polynomial.constant(table, 1)] + [zero] * (ngen - i - 1)

    def scale_row(row, c):
        return [p * c for p in row]

    def add_poly(f, row):
        if f.is_zero():
            return None
        cont = f.rational_content()
        if order.leading_term(f)[1] < 0:
            cont = -cont
        inv = ONE / cont
        basis.append(f * inv)
        rows.append(scale_row(row, inv) if track else None)
        return len(basis) - 1

    for i, g in enumerate(gens):
        add_poly(g, unit_row(i) if track else None)
    if not basis:
        return (), ()

    lms = [order.leading_term(g)[0] for g in basis]
    key = order.key

    # pending pairs, selected by (key(lcm), i, j) smallest first
    heap = []
    processed = set()

    def push_pairs(j):
        lmj = lms[j]
        for i in range(j):
            l = mon_lcm(lms[i], lmj)
            heapq.heappush(heap, (key(l), i, j, l))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, i, j, l = heapq.heappop(heap)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        lmi, lmj = lms[i], lms[j]
        if mon_lcm(lmi, lmj) != l:
            continue
        # coprime leading monomials: S-polynomial reduces to zero
        if mon_mul(lmi, lmj) == l:
            continue
        # chain criterion: a third element divides the lcm and both
        # side pairs are already settled
        chained = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if mon_divides(lms[k], l):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in processed and b in processed:
                    chained = True
                    break
        if chained:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        if track:
            lmfi, lcfi = order.leading_term(basis[i])
            lmfj, lcfj = order.leading_term(basis[j])
            mi = Polynomial.monomial(table, mon_div(l, lmfi), ONE / lcfi)
            mj = Polynomial.monomial(table, mon_div(l, lmfj), ONE / lcfj)
            srow = [mi * a - mj * b for a, b in zip(rows[i], rows[j])]
        red = _Reducer(basis, order)
        if track:
            cof = [dict() for _ in basis]
            h = red.reduce_full(s, cofactors=cof)
            hrow = srow
            for bi, row in enumerate(cof):
                if row:
                    mult = Polynomial(table, row)
                    hrow = [a - mult * b for a, b in zip(hrow, rows[bi])]
        else:
            h = red.reduce_full(s)
            hrow = None
        idx = add_poly(h, hrow)
        if idx is not None:
            lms.append(order.leading_term(basis[idx])[0])
            push_pairs(idx)

    return _autoreduce(basis, rows, order, track)


def _autoreduce(basis, rows, order, track):
    table = order.table
    key = order.key
    # drop elements whose leading monomial another element's divides;
    # on equal leading monomials the earlier element survives
    order_idx = sorted(range(len(basis)), key=lambda i: key(order.leading_term(basis[i])[0]))
    kept = []
    kept_lms = []
    for i in order_idx:
        lm = order.leading_term(basis[i])[0]
        if any(mon_divides(k, lm) for k in kept_lms):
            continue
        kept.append(i)
        kept_lms.append(lm)
    elements = [basis[i] for i in kept]
    out_rows = [rows[i] for i in kept] if track else None
    # tail-reduce every element against the others
    for n in range(len(elements)):
        others = elements[:n] + elements[n + 1:]
        if not others:
            continue
        red = _Reducer(others, order)
        if track:
            cof = [dict() for _ in others]
            r = red.reduce_full(elements[n], cofactors=cof)
            row = out_rows[n]
            other_rows = out_rows[:n] + out_rows[n + 1:]
            for bi, c in enumerate(cof):
                if c:
                    mult = Polynomial(table, c)
                    row = [a - mult * b for a, b in zip(row, other_rows[bi])]
        else:
            r = red.reduce_full(elements[n])
            row = None
        assert not r.is_zero(), "autoreduction killed a basis element"
        cont = r.rational_content()
        if order.leading_term(r)[1] < 0:
            cont = -cont
        inv = ONE / cont
        elements[n] = r * inv
        if track:
            out_rows[n] = [p * inv for p in row]
    if track:
        return tuple(elements), tuple(tuple(r) for r in out_rows)
    return tuple(elements), ()
