"""Classical separation of denominators: common-zero splitting via unit
certificates, annihilator-based splitting of algebraically dependent
factors, numerator reduction, and the iterated one-variable-at-a-time
decomposition kept around as a diagnostic for spurious poles.
"""

from fractions import Fraction

from .apart import RationalFunction, canonical_factor_key, _refine
from .errors import DivisionError
from .groebner import (Ideal, buchberger, buchberger_with_cofactors,
                       normal_form, normal_form_with_cofactors)
from .order import MonomialOrder
from .ring import (Polynomial, VarTable, divexact, poly_to_string,
                   square_free_split, _coeff_list)

ONE = Fraction(1)


################################################################
# Requirement (i): common zeros and unit certificates
################################################################

_proper_cache = {}
_bare_basis_cache = {}
_indep_cache = {}


def have_common_zero(factors):
    """True iff the factors generate a proper ideal.

    Properness over the algebraic closure is the criterion: the reduced
    basis contains a constant exactly when no common zero exists.
    """
    factors = tuple(factors)
    if not factors:
        return True
    key = (factors[0].table, frozenset(f.terms for f in factors))
    hit = _proper_cache.get(key)
    if hit is None:
        hit = not _bare_basis(factors).contains_one()
        _proper_cache[key] = hit
    return hit


def _bare_basis(factors):
    key = (factors[0].table, tuple(f.terms for f in factors))
    hit = _bare_basis_cache.get(key)
    if hit is None:
        order = MonomialOrder.degrevlex(factors[0].table)
        hit = buchberger(Ideal(factors), order)
        _bare_basis_cache[key] = hit
    return hit


def nullstellensatz_cofactors(factors_with_powers):
    """Cofactors h_i with sum(h_i * d_i^a_i) == 1, or None.

    None means the powered factors still have a common zero, so no such
    certificate exists. The certificate comes out of cofactor-tracking
    completion: the constant basis element's combination row, rescaled.
    """
    factors_with_powers = tuple(factors_with_powers)
    if not factors_with_powers:
        return None
    powered = [f**a for f, a in factors_with_powers]
    order = MonomialOrder.degrevlex(powered[0].table)
    basis, rows = buchberger_with_cofactors(Ideal(powered), order)
    for e, row in zip(basis.elements, rows):
        if e.is_constant() and not e.is_zero():
            inv = ONE / e.constant_value()
            return tuple(h * inv for h in row)
    return None


################################################################
# Requirement (ii): annihilators
################################################################

class Annihilator:
    """A nonzero polynomial vanishing on the factor tuple.

    `polynomial` lives in fresh variables, one per factor in order;
    substituting the factors back yields zero identically.
    """

    __slots__ = ("polynomial", "factors", "names")

    def __init__(self, polynomial, factors, names):
        object.__setattr__(self, "polynomial", polynomial)
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "names", tuple(names))

    def __setattr__(self, name, value):
        raise AttributeError("Annihilator is immutable")

    def substituted(self):
        """polynomial(d_1, ..., d_m) over the factors' ring."""
        x_table = self.factors[0].table
        by_name = dict(zip(self.names, self.factors))
        acc = Polynomial.zero(x_table)
        for mon, coeff in self.polynomial.terms:
            term = Polynomial.constant(x_table, coeff)
            for name, e in zip(self.polynomial.table.names, mon):
                if e:
                    term = term * by_name[name] ** e
            acc = acc + term
        return acc

    def __repr__(self):
        return "Annihilator(%s)" % poly_to_string(self.polynomial)


def _fresh_names(base, count, taken):
    prefix = base
    while any(("%s%d" % (prefix, i + 1)) in taken for i in range(count)):
        prefix = prefix + base
    return tuple("%s%d" % (prefix, i + 1) for i in range(count))


def annihilator(factors):
    """Least-total-degree algebraic relation among the factors, or None.

    Computed from the elimination basis of {y_i - d_i} under an x-major
    block order: a basis element free of the x-variables annihilates the
    factor tuple, and independence means no such element exists.
    """
    factors = tuple(factors)
    assert factors, "annihilator of an empty factor list"
    x_names = factors[0].table.names
    y_names = _fresh_names("y", len(factors), set(x_names))
    table = VarTable(x_names + y_names)
    gens = []
    for name, d in zip(y_names, factors):
        gens.append(Polynomial.variable(table, name) - d.map_to(table))
    order = MonomialOrder(table, (x_names, y_names))
    basis = buchberger(Ideal(gens), order)
    xset = set(x_names)
    free = [e for e in basis.elements if not (e.variables_used() & xset)]
    if not free:
        return None
    free.sort(key=lambda e: (e.total_degree(), e.terms))
    return Annihilator(free[0].map_to(VarTable(y_names)), factors, y_names)


def is_algebraically_independent(factors):
    """True iff no nonzero polynomial relation ties the factors together."""
    factors = tuple(factors)
    if not factors:
        return True
    if len(factors) > len(factors[0].table):
        # more polynomials than variables are always dependent
        return False
    key = (factors[0].table, frozenset(f.terms for f in factors))
    hit = _indep_cache.get(key)
    if hit is None:
        hit = annihilator(factors) is None
        _indep_cache[key] = hit
    return hit


################################################################
# The two-step decomposition
################################################################

class LeinartasTerm:
    """numerator / product(factors[i]^power over the index entries)."""

    __slots__ = ("numerator", "entries", "factors")

    def __init__(self, numerator, entries, factors):
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "factors", tuple(factors))

    def __setattr__(self, name, value):
        raise AttributeError("LeinartasTerm is immutable")

    def denominator_factors(self):
        return tuple((self.factors[i], a) for i, a in self.entries)

    def __repr__(self):
        from .apart import _term_string
        return "LeinartasTerm(%s)" % _term_string(
            self.numerator, self.denominator_factors())


class TermReport:
    """Definition checks for one term of a decomposition."""

    __slots__ = ("common_zero", "independent", "numerator_reduced")

    def __init__(self, common_zero, independent, numerator_reduced):
        object.__setattr__(self, "common_zero", common_zero)
        object.__setattr__(self, "independent", independent)
        object.__setattr__(self, "numerator_reduced", numerator_reduced)

    def __setattr__(self, name, value):
        raise AttributeError("TermReport is immutable")

    @property
    def ok(self):
        return self.common_zero and self.independent and self.numerator_reduced

    def __repr__(self):
        return ("TermReport(common_zero=%s, independent=%s, "
                "numerator_reduced=%s)" % (self.common_zero, self.independent,
                                           self.numerator_reduced))


def leinartas_decompose(r):
    """Decompose a normalized RationalFunction into terms whose
    denominator factors share a common zero and are algebraically
    independent, with numerators reduced modulo the ideal of the bare
    factors.

    Terms violating the common-zero condition split along a unit
    certificate 1 = sum h_i d_i^a_i, dropping one factor per summand.
    Terms with dependent factors split along an annihilator of the
    powered factors: with p = sum c_g y^g and b the exponent of a
    least-degree monomial of p, every other monomial g contributes a
    term scaled by -c_g/c_b whose factor i carries a_i*max(g_i-b_i-1, 0)
    into the numerator and a_i*max(b_i+1-g_i, 0) into the denominator,
    so each summand loses at least one factor. Numerator reduction
    spawns lower-power terms from the division cofactors, keeping the
    recombination bit-exact.
    """
    assert isinstance(r, RationalFunction), \
        "leinartas_decompose wants a RationalFunction"
    factors = tuple(f for f, _ in r.denominator_factors)
    x_table = r.table
    start = {i: a for i, (_, a) in enumerate(r.denominator_factors)}
    stack = [(r.numerator * r.constant, start)]
    buckets = {}
    cofactor_cache = {}

    def bare_with_cofactors(idx):
        hit = cofactor_cache.get(idx)
        if hit is None:
            order = MonomialOrder.degrevlex(x_table)
            hit = buchberger_with_cofactors(
                Ideal([factors[i] for i in idx]), order)
            cofactor_cache[idx] = hit
        return hit

    while stack:
        num, powers = stack.pop()
        if num.is_zero():
            continue
        if not powers:
            buckets[()] = buckets.get((), Polynomial.zero(x_table)) + num
            continue
        idx = tuple(sorted(powers))
        fw = [(factors[i], powers[i]) for i in idx]

        cofs = nullstellensatz_cofactors(fw)
        if cofs is not None:
            for i, h in zip(idx, cofs):
                rest = dict(powers)
                del rest[i]
                stack.append((num * h, rest))
            continue

        ann = annihilator([f**a for f, a in fw])
        if ann is not None:
            p = ann.polynomial
            beta, c_beta = min(p.terms, key=lambda t: (sum(t[0]), t[0]))
            for gamma, c_gamma in p.terms:
                if gamma == beta:
                    continue
                new_num = num * (-c_gamma / c_beta)
                new_powers = {}
                for pos, i in enumerate(idx):
                    a = powers[i]
                    up = a * max(gamma[pos] - beta[pos] - 1, 0)
                    down = a * max(beta[pos] + 1 - gamma[pos], 0)
                    if up:
                        new_num = new_num * factors[i] ** up
                    if down:
                        new_powers[i] = down
                stack.append((new_num, new_powers))
            continue

        basis, rows = bare_with_cofactors(idx)
        rem, cofs = normal_form_with_cofactors(num, basis.elements,
                                               basis.order)
        for pos, i in enumerate(idx):
            spawn = Polynomial.zero(x_table)
            for c, row in zip(cofs, rows):
                spawn = spawn + c * row[pos]
            if spawn.is_zero():
                continue
            lower = dict(powers)
            if lower[i] == 1:
                del lower[i]
            else:
                lower[i] -= 1
            stack.append((spawn, lower))
        if not rem.is_zero():
            key = tuple(sorted(powers.items()))
            buckets[key] = buckets.get(key, Polynomial.zero(x_table)) + rem

    terms = []
    for key in sorted(buckets, key=lambda k: (
            len(k), [(canonical_factor_key(factors[i]), a) for i, a in k])):
        num = buckets[key]
        if not num.is_zero():
            terms.append(LeinartasTerm(num, key, factors))
    return terms


def verify_leinartas_form(terms):
    """Definition checks per term; accepts LeinartasTerm objects or
    plain (numerator, ((factor, power), ...)) pairs."""
    reports = []
    for term in terms:
        if isinstance(term, LeinartasTerm):
            num = term.numerator
            fw = term.denominator_factors()
        else:
            num, fw = term
            fw = tuple(fw)
        bare = tuple(f for f, _ in fw)
        if not bare:
            reports.append(TermReport(True, True, True))
            continue
        ok_zero = have_common_zero(bare)
        ok_indep = is_algebraically_independent(bare)
        ok_reduced = normal_form(num, _bare_basis(bare)) == num
        reports.append(TermReport(ok_zero, ok_indep, ok_reduced))
    return reports


################################################################
# Iterated one-variable decomposition (diagnostic)
################################################################

def _uni_divmod(n, d, v):
    """Fraction-free division in v: returns (q, r, s) with
    s*n == q*d + r and deg_v r < deg_v d; the scale s is a power of d's
    v-leading coefficient, hence free of v."""
    table = n.table
    i = table.index[v]
    b = _coeff_list(d, i)
    assert b, "division by zero"
    db = len(b) - 1
    lb = b[-1]
    a = _coeff_list(n, i)
    while a and a[-1].is_zero():
        a.pop()
    q = [Polynomial.zero(table)] * max(len(a) - db, 0)
    s = Polynomial.constant(table, 1)
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        lead = a[-1]
        a = [lb * c for c in a]
        q = [lb * c for c in q]
        s = s * lb
        for k in range(db + 1):
            a[shift + k] = a[shift + k] - lead * b[k]
        q[shift] = q[shift] + lead
        while a and a[-1].is_zero():
            a.pop()

    def assemble(coeffs):
        acc = Polynomial.zero(table)
        base = Polynomial.variable(table, v)
        for e, part in enumerate(coeffs):
            acc = acc + part * base**e
        return acc

    return assemble(q), assemble(a), s


def _uni_xgcd(A, B, v):
    """(g, s, t) with s*A + t*B == g and deg_v g == 0.

    Requires A and B coprime in v, which refined pairwise-coprime
    factors always are. Intermediate rows are content-reduced to keep
    coefficients small; the identity is preserved exactly.
    """
    table = A.table
    one = Polynomial.constant(table, 1)
    zero = Polynomial.zero(table)
    r0, s0, t0 = A, one, zero
    r1, s1, t1 = B, zero, one
    while r1.degree_in(v) > 0:
        q, rem, scale = _uni_divmod(r0, r1, v)
        r2 = rem
        s2 = scale * s0 - q * s1
        t2 = scale * t0 - q * t1
        if not r2.is_zero():
            inv = ONE / r2.rational_content()
            r2, s2, t2 = r2 * inv, s2 * inv, t2 * inv
        r0, s0, t0 = r1, s1, t1
        r1, s1, t1 = r2, s2, t2
    assert not r1.is_zero(), "factors share a root in the variable"
    return r1, s1, t1


def _apart_one_var(num, vfactors, v):
    """Split num / prod(A^a) with respect to v.

    vfactors are pairwise coprime with positive v-degree. Yields
    (numerator, vfree_den, A, j) entries; A is None for the part
    polynomial in v, and A-entries have deg_v numerator < deg_v A.
    """
    table = num.table
    out = []

    def fadic(n, dfree, A, a):
        k = a
        cur = n
        while k > 0 and not cur.is_zero():
            q, rem, s = _uni_divmod(cur, A, v)
            dfree = dfree * s
            if not rem.is_zero():
                out.append((rem, dfree, A, k))
            cur = q
            k -= 1
        if not cur.is_zero():
            out.append((cur, dfree, None, 0))

    def split(n, dfree, flist):
        if n.is_zero():
            return
        if len(flist) == 1:
            A, a = flist[0]
            fadic(n, dfree, A, a)
            return
        head, rest = flist[:1], flist[1:]
        P = head[0][0] ** head[0][1]
        Q = Polynomial.constant(table, 1)
        for f, a in rest:
            Q = Q * f**a
        g, s, t = _uni_xgcd(P, Q, v)
        # n/(P*Q) = n*s/(g*Q) + n*t/(g*P)
        split(n * s, dfree * g, rest)
        split(n * t, dfree * g, head)

    den = Polynomial.constant(table, 1)
    for f, a in vfactors:
        den = den * f**a
    q, rem, s = _uni_divmod(num, den, v)
    if not q.is_zero():
        out.append((q, s, None, 0))
    split(rem, s, vfactors)
    return out


def _refine_pieces(pieces):
    """Square-free split plus GCD closure with powers carried through.

    Returns (atoms_with_powers, constant): the product of the powered
    atoms times the constant equals the product of the input pieces.
    """
    candidates = []
    for f, a in pieces:
        if not f.is_constant():
            candidates.extend(p for p, _ in square_free_split(f))
    atoms = _refine(candidates)
    powers = {}
    const = ONE
    for f, a in pieces:
        work = f
        for atom in atoms:
            while True:
                try:
                    work = divexact(work, atom)
                except DivisionError:
                    break
                powers[atom.terms] = powers.get(atom.terms, 0) + a
        assert work.is_constant(), "piece escaped refinement"
        const = const * work.constant_value() ** a
    by_terms = {atom.terms: atom for atom in atoms}
    return [(by_terms[t], powers[t]) for t in powers], const


def iterated_univariate_apart(numerator, denominator, var_order=None):
    """Classical variable-by-variable decomposition.

    Decomposes with respect to the first variable treating the others
    as constants, then recurses into the coefficient denominators with
    the next variable; factors already split off are never revisited,
    which is exactly how spurious poles arise. Returns a Decomposition.
    """
    from .apart import Decomposition, _den_pieces
    x_table = numerator.table
    if var_order is None:
        var_order = x_table.names
    var_order = tuple(var_order)

    merged = {}

    def emit(num, factors):
        if num.is_zero():
            return
        factors = tuple(sorted(factors,
                               key=lambda fa: (canonical_factor_key(fa[0]),
                                               fa[1])))
        sig = tuple((f.terms, a) for f, a in factors)
        cur = merged.get(sig)
        merged[sig] = (num if cur is None else cur[0] + num, factors)

    def recurse(num, pieces, vars_left, tail):
        if num.is_zero():
            return
        pieces, const = _refine_pieces(pieces)
        num = num * (ONE / const)
        if not pieces:
            emit(num, tail)
            return
        if not vars_left:
            emit(num, tuple(pieces) + tail)
            return
        v = vars_left[0]
        vf = [(f, a) for f, a in pieces if f.degree_in(v) > 0]
        sf = [(f, a) for f, a in pieces if f.degree_in(v) == 0]
        if not vf:
            recurse(num, pieces, vars_left[1:], tail)
            return
        for n_k, dfree, A, j in _apart_one_var(num, vf, v):
            subpieces = list(sf)
            if dfree.is_constant():
                n_k = n_k * (ONE / dfree.constant_value())
            else:
                subpieces.append((dfree, 1))
            subtail = tail if A is None else ((A, j),) + tail
            recurse(n_k, subpieces, vars_left[1:], subtail)

    recurse(numerator, list(_den_pieces(denominator)), var_order, ())

    terms = []
    for sig in sorted(merged, key=lambda s: tuple(
            (canonical_factor_key(merged[s][1][i][0]), a)
            for i, (_, a) in enumerate(s))):
        num, factors = merged[sig]
        if not num.is_zero():
            terms.append((num, factors))
    return Decomposition(terms, x_table)


def spurious_factors(decomposition, reference_factors):
    """Factors appearing in the decomposition but not associate to any
    reference factor, in canonical order."""
    terms = getattr(decomposition, "terms", decomposition)
    ref = {f.monic_normalized().terms for f in reference_factors}
    seen = {}
    for _, factors in terms:
        for f, _a in factors:
            norm = f.monic_normalized()
            if norm.terms not in ref:
                seen[norm.terms] = norm
    return tuple(sorted(seen.values(), key=canonical_factor_key))
