"""Sparse multivariate polynomial arithmetic over the rationals.

Polynomials are stored in canonical form: a tuple of (monomial, coefficient)
pairs with no zero coefficients, monomials distinct and sorted descending
under degrevlex over the full variable table. Coefficients are
fractions.Fraction, monomials are plain exponent tuples.

The module also carries the integer layer used elsewhere: prime field
elements, primality testing and integer factorization.
"""

from fractions import Fraction
from math import gcd as int_gcd, isqrt

from .errors import DivisionError, RingError

ZERO = Fraction(0)
ONE = Fraction(1)


################################################################
# Variable tables
################################################################

class VarTable:
    """Immutable, ordered list of variable names defining a ring."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        assert len(set(names)) == len(names), "duplicate variable names"
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, name, value):
        raise AttributeError("VarTable is immutable")

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarTable(%s)" % ", ".join(self.names)

    def extend_front(self, names):
        """New table with `names` prepended (used to adjoin q-symbols)."""
        clash = [n for n in names if n in self.index]
        if clash:
            raise RingError("symbols already present in ring: %s" % ", ".join(clash))
        return VarTable(tuple(names) + self.names)


################################################################
# Monomial helpers (exponent tuples)
################################################################

def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mon_div(a, b):
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mon_degree(a):
    return sum(a)


def grevlex_key(m):
    """Sort key realizing degrevlex: higher key means greater monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def display_key(m):
    """Graded inverse-lex key used for printing, ascending order.

    Sorting terms ascending by this key reproduces the low-order-first
    style of the reference outputs (constants first, then q1-heavy
    monomials before q2-heavy ones).
    """
    return (sum(m), tuple(-e for e in m))


################################################################
# Polynomials
################################################################

def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficient must be int or Fraction, got %r" % type(c))


class Polynomial:
    """A sparse polynomial over Q attached to a VarTable."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        """Build from a {monomial: coefficient} mapping or pair iterable."""
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        nvars = len(table)
        clean = {}
        for mon, coeff in items:
            mon = tuple(mon)
            assert len(mon) == nvars, "monomial arity does not match table"
            coeff = _coerce_coeff(coeff)
            if coeff:
                acc = clean.get(mon)
                if acc is None:
                    clean[mon] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        clean[mon] = acc
                    else:
                        del clean[mon]
        ordered = sorted(clean.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", tuple(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def constant(cls, table, value):
        return cls(table, {(0,) * len(table): _coerce_coeff(value)})

    @classmethod
    def variable(cls, table, name):
        if name not in table:
            raise RingError("unknown variable %r" % name)
        mon = [0] * len(table)
        mon[table.index[name]] = 1
        return cls(table, {tuple(mon): ONE})

    @classmethod
    def monomial(cls, table, mon, coeff=ONE):
        return cls(table, {tuple(mon): _coerce_coeff(coeff)})

    # -- basic queries -----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self):
        assert self.is_constant(), "polynomial is not constant"
        return self.terms[0][1] if self.terms else ZERO

    def is_one(self):
        return self.is_constant() and self.constant_value() == 1

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.table.index[name]
        return max(m[i] for m, _ in self.terms)

    def variables_used(self):
        """Set of variable names with a nonzero exponent somewhere."""
        used = set()
        for mon, _ in self.terms:
            for i, e in enumerate(mon):
                if e:
                    used.add(self.table.names[i])
        return used

    def coefficient_of(self, mon):
        mon = tuple(mon)
        for m, c in self.terms:
            if m == mon:
                return c
        return ZERO

    def as_dict(self):
        return dict(self.terms)

    # -- canonical comparisons ---------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table, self.terms))

    def _check_table(self, other):
        if self.table != other.table:
            raise RingError("incompatible rings: %r vs %r" % (self.table, other.table))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.table, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_table(other)
        acc = dict(self.terms)
        for mon, coeff in other.terms:
            cur = acc.get(mon)
            if cur is None:
                acc[mon] = coeff
            else:
                cur = cur + coeff
                if cur:
                    acc[mon] = cur
                else:
                    del acc[mon]
        return Polynomial(self.table, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {m: -c for m, c in self.terms})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.table, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            if not c:
                return Polynomial.zero(self.table)
            return Polynomial(self.table, {m: k * c for m, k in self.terms})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_table(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.table)
        # Iterate over the shorter operand on the outside.
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc = {}
        for ma, ca in a:
            for mb, cb in b:
                mon = mon_mul(ma, mb)
                cur = acc.get(mon)
                if cur is None:
                    acc[mon] = ca * cb
                else:
                    cur = cur + ca * cb
                    if cur:
                        acc[mon] = cur
                    else:
                        del acc[mon]
        return Polynomial(self.table, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        assert isinstance(n, int) and n >= 0, "exponent must be a nonnegative integer"
        result = Polynomial.constant(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            if not c:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (ONE / c)
        return NotImplemented

    # -- calculus and evaluation ---------------------------------------

    def derivative(self, name):
        i = self.table.index[name]
        acc = {}
        for mon, coeff in self.terms:
            e = mon[i]
            if e:
                m = list(mon)
                m[i] = e - 1
                acc[tuple(m)] = coeff * e
        return Polynomial(self.table, acc)

    def evaluate(self, assignment):
        """Exact evaluation; every used variable must be assigned."""
        names = self.table.names
        total = ZERO
        for mon, coeff in self.terms:
            val = coeff
            for i, e in enumerate(mon):
                if e:
                    base = assignment.get(names[i])
                    if base is None:
                        raise RingError("no value for variable %r" % names[i])
                    val = val * Fraction(base) ** e
            total += val
        return total

    def substitute(self, assignment):
        """Partial substitution of variables by numbers; returns a Polynomial."""
        names = self.table.names
        acc = {}
        for mon, coeff in self.terms:
            val = coeff
            new = list(mon)
            for i, e in enumerate(mon):
                if e and names[i] in assignment:
                    val = val * Fraction(assignment[names[i]]) ** e
                    new[i] = 0
            if val:
                key = tuple(new)
                cur = acc.get(key, ZERO) + val
                if cur:
                    acc[key] = cur
                elif key in acc:
                    del acc[key]
        return Polynomial(self.table, acc)

    def map_to(self, table):
        """Re-express over another table containing all used variables."""
        if table == self.table:
            return self
        positions = []
        for i, n in enumerate(self.table.names):
            positions.append(table.index.get(n))
        acc = {}
        for mon, coeff in self.terms:
            new = [0] * len(table)
            for i, e in enumerate(mon):
                if e:
                    if positions[i] is None:
                        raise RingError("variable %r missing from target ring" % self.table.names[i])
                    new[positions[i]] = e
            acc[tuple(new)] = coeff
        return Polynomial(table, acc)

    # -- normalization -------------------------------------------------

    def leading(self):
        """Leading (monomial, coefficient) under canonical degrevlex."""
        assert self.terms, "zero polynomial has no leading term"
        return self.terms[0]

    def rational_content(self):
        """Positive Fraction c with self/c integer-primitive; 0 for zero."""
        if not self.terms:
            return ZERO
        num = 0
        den = 1
        for _, c in self.terms:
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """(content, primitive part): integer coefficients, gcd 1, positive lead.

        The sign lives in the content so that content * part == self.
        """
        if not self.terms:
            return ZERO, self
        cont = self.rational_content()
        if self.terms[0][1] < 0:
            cont = -cont
        return cont, self * (ONE / cont)

    def monic_normalized(self):
        """Primitive part alone (sign fixed to positive leading coefficient)."""
        return self.primitive()[1]

    def __repr__(self):
        return "Polynomial(%s)" % poly_to_string(self)


def poly_to_string(f):
    """Render a polynomial with terms ascending in the display order."""
    if not f.terms:
        return "0"
    names = f.table.names
    parts = []
    for mon, coeff in sorted(f.terms, key=lambda t: display_key(t[0])):
        factors = []
        for i, e in enumerate(mon):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append("%s^%d" % (names[i], e))
        if not factors:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = "*".join(factors)
        else:
            body = str(abs(coeff)) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts)


################################################################
# Exact division and GCD
################################################################

def divexact(f, g):
    """Exact multivariate division f / g.

    Raises DivisionError if g does not divide f. Works by repeatedly
    cancelling leading terms under the canonical order; any failure to
    cancel proves indivisibility.
    """
    f._check_table(g)
    if g.is_zero():
        raise DivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        return f * (ONE / g.constant_value())
    table = f.table
    rem = dict(f.terms)
    quo = {}
    gm, gc = g.leading()
    gterms = g.terms
    while rem:
        m = max(rem, key=grevlex_key)
        c = rem[m]
        if not mon_divides(gm, m):
            raise DivisionError("not divisible")
        qm = mon_div(m, gm)
        qc = c / gc
        quo[qm] = qc
        for tm, tc in gterms:
            key = mon_mul(qm, tm)
            cur = rem.get(key, ZERO) - qc * tc
            if cur:
                rem[key] = cur
            elif key in rem:
                del rem[key]
    return Polynomial(table, quo)


def _coeff_list(f, i):
    """Dense coefficient list of f in variable index i, ascending degree.

    Coefficients are polynomials over the same table with exponent 0 at i.
    """
    deg = max((m[i] for m, _ in f.terms), default=0)
    buckets = [dict() for _ in range(deg + 1)]
    for mon, coeff in f.terms:
        stripped = list(mon)
        e = stripped[i]
        stripped[i] = 0
        buckets[e][tuple(stripped)] = coeff
    return [Polynomial(f.table, b) for b in buckets]


def _from_coeff_list(coeffs, i, table):
    acc = {}
    for e, poly in enumerate(coeffs):
        for mon, c in poly.terms:
            m = list(mon)
            m[i] = e
            acc[tuple(m)] = c
    return Polynomial(table, acc)


def _trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _pseudo_rem(a, b, table):
    """Pseudo-remainder of coefficient lists a by b (in-variable division)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        lead = a[-1]
        # scale then subtract lead * x^(da-db) * b
        a = [lb * c for c in a]
        for k in range(db + 1):
            a[da - db + k] = a[da - db + k] - lead * b[k]
        a = _trim(a)
    return a


def _content_of_list(coeffs):
    cont = None
    for c in coeffs:
        if c.is_zero():
            continue
        cont = c if cont is None else gcd(cont, c)
        if cont.is_constant():
            break
    return cont


def gcd(f, g):
    """Polynomial GCD over Q via a primitive pseudo-remainder sequence.

    The result is integer-primitive with positive leading coefficient
    (canonical order); gcd of two zero polynomials is zero. The main
    variable for the recursion is the one of highest degree across the
    two operands.
    """
    f._check_table(g)
    if f.is_zero():
        return g.monic_normalized() if not g.is_zero() else g
    if g.is_zero():
        return f.monic_normalized()
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(f.table, 1)
    table = f.table
    # choose main variable
    best = None
    best_deg = 0
    for i, name in enumerate(table.names):
        d = max(f.degree_in(name), g.degree_in(name))
        if d > best_deg:
            best_deg = d
            best = i
    assert best is not None
    i = best
    fa = _coeff_list(f, i)
    ga = _coeff_list(g, i)
    if len(fa) == 1 or len(ga) == 1:
        # one operand free of the main variable: gcd with the content
        if len(fa) > 1:
            return gcd(_content_of_list(fa), g)
        if len(ga) > 1:
            return gcd(f, _content_of_list(ga))
        return gcd(_content_of_list(fa), _content_of_list(ga))
    contf = _content_of_list(fa)
    contg = _content_of_list(ga)
    cont = gcd(contf, contg)
    a = [divexact(c, contf) for c in fa]
    b = [divexact(c, contg) for c in ga]
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, table)
        if not r:
            prim = b
            break
        if len(r) == 1:
            prim = None
            break
        rc = _content_of_list(r)
        a = b
        b = [divexact(c, rc) for c in r]
    if prim is None:
        result = cont
    else:
        result = cont * _from_coeff_list(prim, i, table)
    return result.monic_normalized()


def lcm(f, g):
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.table)
    return divexact(f * g, gcd(f, g)).monic_normalized()


################################################################
# Square-free decomposition
################################################################

def square_free_split(f):
    """Square-free decomposition into pairwise coprime factors.

    Returns a list of (factor, multiplicity) pairs whose product (with
    multiplicities) equals f up to a rational constant. Factors are
    integer-primitive with positive leading coefficient. Constant input
    yields an empty list.
    """
    assert not f.is_zero(), "cannot factor the zero polynomial"
    f = f.monic_normalized()
    if f.is_constant():
        return []
    # main variable: highest degree present
    table = f.table
    name = max((n for n in table.names if f.degree_in(n) > 0),
               key=lambda n: f.degree_in(n))
    i = table.index[name]
    coeffs = _coeff_list(f, i)
    cont = _content_of_list(coeffs)
    pp = divexact(f, cont)
    factors = []
    if not cont.is_constant():
        factors.extend(square_free_split(cont))
    if not pp.is_constant():
        factors.extend(_yun(pp, name))
    return factors


def _yun(f, name):
    """Yun's algorithm on a polynomial primitive in `name` (char 0)."""
    df = f.derivative(name)
    g = gcd(f, df)
    out = []
    if g.is_constant():
        out.append((f.monic_normalized(), 1))
        return out
    c = divexact(f, g)
    d = divexact(df, g) - c.derivative(name)
    k = 1
    while not c.is_constant():
        p = gcd(c, d)
        if not p.is_constant():
            out.append((p.monic_normalized(), k))
            c = divexact(c, p)
        d = divexact(d, p) - c.derivative(name)
        k += 1
    return out


################################################################
# Prime field elements
################################################################

class ModP:
    """Element of the prime field Z/p, normalized to 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        assert p > 1, "modulus must exceed 1"
        object.__setattr__(self, "value", value % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("ModP is immutable")

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise RingError("mixed moduli: %d vs %d" % (self.p, other.p))
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return ModP(self.value + v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __sub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return ModP(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return ModP(v - self.value, self.p)

    def __mul__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return ModP(self.value * v, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("zero has no inverse")
        return ModP(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return self * ModP(v, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return "ModP(%d, %d)" % (self.value, self.p)


################################################################
# Integer primality and factorization
################################################################

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Miller-Rabin with a fixed witness set, deterministic for n < 2^64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n, rng):
    """Brent-style rho; returns a nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = int_gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = int_gcd(abs(x - ys), n)
        if g != n:
            return g


_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


def factor_integer(n, trial_bound=10**6, rng=None):
    """Factor a positive integer into {prime: multiplicity}.

    Trial division by a 2-3-5 wheel up to `trial_bound`, then Pollard rho
    on whatever composite remains. Primality of every reported base is
    certified by is_probable_prime (deterministic below 2^64).
    """
    assert n > 0, "factor_integer expects a positive integer"
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    p = 7
    wheel = _WHEEL
    wi = 0
    while p <= trial_bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            if n == 1:
                return out
            if is_probable_prime(n):
                out[n] = out.get(n, 0) + 1
                return out
        p += wheel[wi]
        wi = (wi + 1) % len(wheel)
    if n == 1:
        return out
    if p * p > n or is_probable_prime(n):
        # remainder is prime (either certified or below the trial horizon)
        out[n] = out.get(n, 0) + 1
        return out
    if rng is None:
        import random
        rng = random.Random(0x5eed)
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out
