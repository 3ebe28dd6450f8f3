"""Finite-field reconstruction helpers: anchor points whose factor
values carry distinguishable largest primes, denominator-power guessing
from a single exact probe, Chinese remaindering, rational
reconstruction, and guess-deflated reconstruction of univariate slices.
"""

import random
from fractions import Fraction
from math import gcd as int_gcd, isqrt

from .apart import normalize_and_factor
from .errors import AnchorError, ReconstructionError
from .ring import Polynomial, VarTable, factor_integer


################################################################
# modular plumbing
################################################################

def rational_image(value, p):
    """Image of a rational in the prime field: num * den^-1 mod p."""
    value = Fraction(value)
    if value.denominator % p == 0:
        raise ZeroDivisionError("denominator vanishes mod %d" % p)
    return value.numerator * pow(value.denominator, -1, p) % p


def crt_combine(residues):
    """Combine (value, modulus) pairs with pairwise coprime moduli."""
    residues = list(residues)
    assert residues, "nothing to combine"
    a, m = residues[0]
    a %= m
    for b, n in residues[1:]:
        assert int_gcd(m, n) == 1, "moduli are not coprime"
        # a + m*t == b (mod n)
        t = (b - a) * pow(m, -1, n) % n
        a = a + m * t
        m = m * n
    return a, m


def rational_reconstruct(a, m):
    """Smallest rational n/d with n*d^-1 == a (mod m), or None.

    Both |n| and d are bounded by floor(sqrt(m/2)) so the answer is
    unique when it exists; d is kept coprime to m.
    """
    assert 0 <= a < m, "residue out of range"
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound or int_gcd(abs(t1), m) != 1:
        return None
    n, d = r1, t1
    if d < 0:
        n, d = -n, -d
    if int_gcd(abs(n), d) != 1:
        return None
    return Fraction(n, d)


################################################################
# anchors and denominator guessing
################################################################

class AnchorPoint:
    """Integer assignment where each factor value exposes its own prime.

    Every factor evaluates to a nonzero integer whose largest prime
    factor has multiplicity one; those primes are pairwise distinct and
    divide no other factor's value, so denominator powers can be read
    off a single exact probe.
    """

    __slots__ = ("assignment", "factors", "values", "primes")

    def __init__(self, assignment, factors, values, primes):
        object.__setattr__(self, "assignment", dict(assignment))
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "primes", tuple(primes))

    def __setattr__(self, name, value):
        raise AttributeError("AnchorPoint is immutable")

    def __repr__(self):
        return "AnchorPoint(%r, primes=%r)" % (self.assignment, self.primes)


def _check_anchor(factors, assignment):
    """AnchorPoint for the assignment, or a failure-reason string."""
    values = [f.evaluate(assignment) for f in factors]
    if any(v == 0 for v in values):
        return "zero value"
    if any(v.denominator != 1 for v in values):
        return "fractional value"
    values = [abs(int(v)) for v in values]
    primes = []
    for v in values:
        fac = factor_integer(v)
        p = max(fac)
        if fac[p] != 1:
            return "repeated largest prime"
        primes.append(p)
    if len(set(primes)) != len(primes):
        return "prime not distinct"
    if any(v % p == 0
           for i, p in enumerate(primes)
           for j, v in enumerate(values) if j != i):
        return "prime divides another value"
    return AnchorPoint(assignment, factors, values, primes)


def anchor_at(factors, assignment):
    """Validate a specific assignment as an anchor; AnchorError if not."""
    factors = tuple(factors)
    assert factors, "no factors to anchor"
    got = _check_anchor(factors, assignment)
    if isinstance(got, str):
        raise AnchorError("not an anchor (%s) at %r" % (got, assignment))
    return got


def find_anchor(factors, budget=2000, low=10, high=10**4, rng=None):
    """Randomized search for an AnchorPoint over the factors.

    Coordinates are drawn uniformly from [low, high]. Raises AnchorError
    with per-condition failure counts once the budget is exhausted.
    """
    factors = tuple(factors)
    assert factors, "no factors to anchor"
    for f in factors:
        assert not f.is_zero() and not f.is_constant(), \
            "anchor factors must be nonzero and non-constant"
    table = factors[0].table
    if rng is None:
        rng = random.Random()
    misses = {}
    for _ in range(budget):
        assignment = {name: rng.randint(low, high) for name in table.names}
        got = _check_anchor(factors, assignment)
        if isinstance(got, str):
            misses[got] = misses.get(got, 0) + 1
            continue
        return got
    detail = ", ".join("%s: %d" % kv for kv in sorted(misses.items()))
    raise AnchorError("no anchor found in %d tries (%s)" % (budget, detail))


class DenominatorGuess:
    """Guessed exponents for the candidate factors at an anchor.

    residual holds whatever part of the probed denominator the
    distinguished primes do not explain: 1 for a clean guess, otherwise
    the witness that a factor is missing from the candidate list or
    that a numerator coefficient collided with a distinguished prime.
    """

    __slots__ = ("factors", "anchor", "exponents", "residual")

    def __init__(self, factors, anchor, exponents, residual):
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "exponents", tuple(exponents))
        object.__setattr__(self, "residual", int(residual))

    def __setattr__(self, name, value):
        raise AttributeError("DenominatorGuess is immutable")

    def denominator(self):
        """The guessed denominator polynomial, powers applied."""
        table = self.factors[0].table
        acc = Polynomial.constant(table, 1)
        for f, a in zip(self.factors, self.exponents):
            if a:
                acc = acc * f**a
        return acc

    def residual_factors(self):
        return factor_integer(self.residual) if self.residual > 1 else {}

    def __repr__(self):
        return "DenominatorGuess(exponents=%r, residual=%d)" % (
            self.exponents, self.residual)


def guess_denominator(value, anchor):
    """Read the factor exponents off one exact probe at the anchor.

    The multiplicity of each distinguished prime in the probe's
    denominator is the guessed exponent of its factor; whatever remains
    after dividing those powers out is reported as the residual.
    """
    value = Fraction(value)
    d_num = value.denominator
    exponents = []
    residual = d_num
    for p in anchor.primes:
        a = 0
        while residual % p == 0:
            residual //= p
            a += 1
        exponents.append(a)
    return DenominatorGuess(anchor.factors, anchor, exponents, residual)


################################################################
# univariate slices
################################################################

def _slice_poly(f, variable, frozen):
    """Freeze all variables but one, landing in a fresh 1-variable ring."""
    part = f.substitute({k: v for k, v in frozen.items() if k != variable})
    return part.map_to(VarTable((variable,)))


def _sample_stream(oracle, frozen, variable, start=1):
    """Yield (point, value) pairs, skipping poles of the oracle."""
    t = start
    while True:
        assignment = dict(frozen)
        assignment[variable] = t
        try:
            yield t, Fraction(oracle(assignment))
        except ZeroDivisionError:
            pass
        t += 1


def _newton_poly(table, points, coeffs):
    x = Polynomial.variable(table, table.names[0])
    acc = Polynomial.constant(table, coeffs[-1])
    for pt, c in zip(reversed(points[:-1]), reversed(coeffs[:-1])):
        acc = acc * (x - Polynomial.constant(table, pt)) \
            + Polynomial.constant(table, c)
    return acc


def deflate_and_reconstruct_univariate(oracle, guess, variable, degree_bound):
    """Reconstruct the oracle's slice in one variable, all other
    variables frozen at the guess's anchor.

    Samples are multiplied by the guessed denominator first. When the
    guess is complete the deflated samples are polynomial and Newton
    interpolation stops at the first vanishing divided difference, which
    doubles as the confirmation sample; that costs numerator degree plus
    two samples. If no polynomial of degree <= degree_bound fits, the
    residual denominator is recovered by blind rational interpolation of
    the deflated samples.
    """
    anchor = guess.anchor
    frozen = {k: v for k, v in anchor.assignment.items() if k != variable}
    table = VarTable((variable,))
    den_slices = [(_slice_poly(f, variable, frozen), a)
                  for f, a in zip(guess.factors, guess.exponents) if a]
    den = Polynomial.constant(table, 1)
    for f, a in den_slices:
        den = den * f**a

    def deflated(assignment):
        d = den.evaluate({variable: assignment[variable]})
        if d == 0:
            raise ZeroDivisionError("guess denominator vanishes")
        return Fraction(oracle(assignment)) * d

    points = []
    coeffs = []
    for pt, val in _sample_stream(deflated, frozen, variable):
        if points:
            pred = _newton_poly(table, points, coeffs).evaluate(
                {variable: pt})
            w = Fraction(1)
            for q in points:
                w *= pt - q
            c = (val - pred) / w
        else:
            c = val
        if points and c == 0:
            num = _newton_poly(table, points, coeffs)
            return normalize_and_factor(num, den_slices)
        points.append(pt)
        coeffs.append(c)
        if len(points) > degree_bound + 1:
            break

    slice_rf = blind_reconstruct_univariate(
        deflated, variable, frozen, max_samples=4 * (degree_bound + 2))
    pieces = list(den_slices) + list(slice_rf.denominator_factors)
    return normalize_and_factor(slice_rf.numerator * slice_rf.constant,
                                pieces)


def blind_reconstruct_univariate(oracle, variable, frozen=None,
                                 max_samples=64):
    """Thiele continued-fraction interpolation of a univariate slice.

    Points are added until the interpolant predicts the next two probe
    values; those two probes are the confirmation cost. Points where an
    inverse difference degenerates are skipped.
    """
    if frozen is None:
        frozen = {}
    table = VarTable((variable,))
    stream = _sample_stream(oracle, frozen, variable)
    used = 0

    def take():
        nonlocal used
        if used >= max_samples:
            raise ReconstructionError(
                "degree bound too low or oracle inconsistent "
                "(no stable interpolant within %d samples)" % max_samples)
        used += 1
        return next(stream)

    nodes = []    # (x_i, b_i) continued-fraction nodes
    pending = []

    def interpolant_value(x):
        acc = None
        for xi, bi in reversed(nodes):
            if acc is None:
                acc = bi
            elif acc == 0:
                return None
            else:
                acc = bi + Fraction(x - xi) / acc
        return acc

    def add_node(x, f):
        phi = f
        for xi, bi in nodes:
            d = phi - bi
            if d == 0:
                # degenerate inverse difference; drop the point
                return False
            phi = Fraction(x - xi) / d
        nodes.append((x, phi))
        return True

    while True:
        if not pending:
            pending.append(take())
        x, f = pending.pop(0)
        if not add_node(x, f):
            continue
        while len(pending) < 2:
            pending.append(take())
        if all(interpolant_value(px) == pf for px, pf in pending):
            break

    num = Polynomial.constant(table, nodes[-1][1])
    den = Polynomial.constant(table, 1)
    x = Polynomial.variable(table, variable)
    for xi, bi in reversed(nodes[:-1]):
        shifted = x - Polynomial.constant(table, xi)
        num, den = Polynomial.constant(table, bi) * num + shifted * den, num
    return normalize_and_factor(num, [den])


################################################################
# external oracle adapter
################################################################

class StreamOracle:
    """Line-protocol adapter for an external process serving samples.

    One request per line: `EVAL x=7 y=5` with an optional trailing
    `mod 2147483629`. The peer answers `VAL <integer>` or
    `VAL <num>/<den>`; `FAIL <reason>` marks an unusable point and is
    surfaced as ZeroDivisionError so samplers skip it.
    """

    def __init__(self, reader, writer, modulus=None):
        self.reader = reader
        self.writer = writer
        self.modulus = modulus

    def __call__(self, assignment):
        parts = ["EVAL"] + ["%s=%d" % (k, assignment[k])
                            for k in sorted(assignment)]
        if self.modulus is not None:
            parts.append("mod %d" % self.modulus)
        self.writer.write(" ".join(parts) + "\n")
        self.writer.flush()
        line = self.reader.readline()
        if not line:
            raise ReconstructionError("oracle stream closed")
        line = line.strip()
        if line.startswith("FAIL"):
            raise ZeroDivisionError(line[4:].strip() or "oracle failure")
        if not line.startswith("VAL"):
            raise ReconstructionError("malformed oracle reply: %r" % line)
        body = line[3:].strip()
        if "/" in body:
            n, d = body.split("/", 1)
            return Fraction(int(n), int(d))
        return Fraction(int(body))
