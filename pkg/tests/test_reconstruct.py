"""Modular plumbing, anchor points, denominator guessing and the
univariate reconstruction ladder."""

import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from partfrac import (AnchorError, Polynomial, ReconstructionError,
                      StreamOracle, VarTable, anchor_at,
                      blind_reconstruct_univariate, crt_combine,
                      deflate_and_reconstruct_univariate, find_anchor,
                      guess_denominator, poly_to_string, rational_image,
                      rational_reconstruct)

from conftest import build

PRIME = 2**61 - 1


def test_rational_image():
    assert rational_image(Fraction(1, 2), 11) == 6
    assert rational_image(3, 11) == 3
    assert rational_image(Fraction(-1, 3), 7) == 2
    with pytest.raises(ZeroDivisionError):
        rational_image(Fraction(1, 11), 11)


def test_crt_combine():
    assert crt_combine([(2, 3), (3, 5)]) == (8, 15)
    assert crt_combine([(1, 2), (2, 3), (3, 5)]) == (23, 30)
    assert crt_combine([(7, 13)]) == (7, 13)


def test_rational_reconstruct():
    assert rational_reconstruct(6, 11) == Fraction(1, 2)
    assert rational_reconstruct(0, 101) == 0
    assert rational_reconstruct(5, 7) is None
    assert rational_reconstruct(rational_image(Fraction(-22, 7), PRIME),
                                PRIME) == Fraction(-22, 7)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_reconstruct_roundtrip(n, d):
    f = Fraction(n, d)
    a = rational_image(f, PRIME)
    assert rational_reconstruct(a, PRIME) == f


def test_crt_then_reconstruct():
    primes = [10**9 + 7, 10**9 + 9, 10**9 + 21]
    f = Fraction(-123456, 789013)
    a, m = crt_combine([(rational_image(f, p), p) for p in primes])
    assert rational_reconstruct(a, m) == f


@pytest.fixture(scope="module")
def anchor(txy):
    return anchor_at([build(txy, "x-y"), build(txy, "y")],
                     {"x": 7, "y": 5})


def test_anchor_at(anchor):
    assert anchor.values == (2, 5)
    assert anchor.primes == (2, 5)
    with pytest.raises(AttributeError):
        anchor.primes = (3, 5)


def test_anchor_at_rejects(txy):
    xmy, y = build(txy, "x-y"), build(txy, "y")
    with pytest.raises(AnchorError) as err:
        anchor_at([xmy, y], {"x": 5, "y": 5})
    assert "zero value" in str(err.value)
    with pytest.raises(AnchorError) as err:
        # 4 = 2^2: largest prime repeats
        anchor_at([xmy], {"x": 9, "y": 5})
    assert "repeated largest prime" in str(err.value)
    with pytest.raises(AnchorError) as err:
        # both values expose the prime 5
        anchor_at([xmy, y], {"x": 10, "y": 5})
    assert "not distinct" in str(err.value)


def test_find_anchor(txy):
    factors = [build(txy, "x-y"), build(txy, "y"), build(txy, "x+y")]
    got = find_anchor(factors, rng=random.Random(7))
    assert len(set(got.primes)) == 3
    assert all(v % p == 0 for v, p in zip(got.values, got.primes))


def test_find_anchor_reports_misses(txy):
    x = build(txy, "x")
    # identical factors can never expose distinct primes
    with pytest.raises(AnchorError) as err:
        find_anchor([x, x], budget=5, rng=random.Random(1))
    msg = str(err.value)
    assert "no anchor found in 5 tries" in msg
    assert "prime not distinct: 5" in msg


def test_guess_denominator(anchor, txy):
    g = guess_denominator(Fraction(1, 50), anchor)
    assert g.exponents == (1, 2)
    assert g.residual == 1 and g.residual_factors() == {}
    assert poly_to_string(g.denominator()) == "x*y^2 - y^3"
    over = guess_denominator(Fraction(1, 150), anchor)
    assert over.exponents == (1, 2)
    assert over.residual == 3 and over.residual_factors() == {3: 1}


def _counted(fn):
    calls = [0]

    def wrapped(assignment):
        calls[0] += 1
        return fn(assignment)
    return wrapped, calls


def _target(assignment):
    xv, yv = assignment["x"], assignment["y"]
    den = (xv - yv) * yv * yv
    if den == 0:
        raise ZeroDivisionError()
    return Fraction(xv + 1, den)


def test_deflated_reconstruction_sample_count(anchor):
    guess = guess_denominator(Fraction(1, 50), anchor)
    oracle, calls = _counted(_target)
    rf = deflate_and_reconstruct_univariate(oracle, guess, "x",
                                            degree_bound=6)
    # numerator degree 1: one extra node plus the vanishing difference
    assert calls[0] == 3
    assert poly_to_string(rf.numerator) == "1/25 + 1/25*x"
    assert [(poly_to_string(f), a) for f, a in rf.denominator_factors] == \
        [("-5 + x", 1)]


def test_deflated_constant_numerator(anchor):
    guess = guess_denominator(Fraction(1, 50), anchor)

    def plain(assignment):
        xv, yv = assignment["x"], assignment["y"]
        return Fraction(1, (xv - yv) * yv * yv)
    oracle, calls = _counted(plain)
    rf = deflate_and_reconstruct_univariate(oracle, guess, "x",
                                            degree_bound=6)
    assert calls[0] == 2
    assert poly_to_string(rf.numerator) == "1/25"


def test_blind_reconstruction_needs_more_samples():
    oracle, calls = _counted(_target)
    rf = blind_reconstruct_univariate(oracle, "x", frozen={"y": 5})
    assert calls[0] == 6
    assert poly_to_string(rf.numerator) == "1/25 + 1/25*x"
    assert [(poly_to_string(f), a) for f, a in rf.denominator_factors] == \
        [("-5 + x", 1)]


def test_blind_reconstruction_skips_poles():
    def shifted(assignment):
        xv = assignment["x"]
        # pole right inside the sampling range
        return Fraction(1, xv - 2)
    rf = blind_reconstruct_univariate(shifted, "x")
    assert poly_to_string(rf.numerator) == "1"
    assert [(poly_to_string(f), a) for f, a in rf.denominator_factors] == \
        [("-2 + x", 1)]


def test_blind_reconstruction_sample_budget():
    rng = random.Random(3)

    def noise(assignment):
        return Fraction(rng.randint(1, 10**6))
    with pytest.raises(ReconstructionError):
        blind_reconstruct_univariate(noise, "x", max_samples=8)


def test_stream_oracle_protocol():
    reader = io.StringIO("VAL 3/50\nVAL 7\nFAIL pole\nnonsense\n")
    writer = io.StringIO()
    oracle = StreamOracle(reader, writer)
    assert oracle({"x": 7, "y": 5}) == Fraction(3, 50)
    assert oracle({"x": 2}) == Fraction(7)
    with pytest.raises(ZeroDivisionError):
        oracle({"x": 5})
    with pytest.raises(ReconstructionError):
        oracle({"x": 6})
    with pytest.raises(ReconstructionError):
        oracle({"x": 8})
    assert writer.getvalue() == \
        "EVAL x=7 y=5\nEVAL x=2\nEVAL x=5\nEVAL x=6\nEVAL x=8\n"


def test_stream_oracle_modulus_tag():
    oracle = StreamOracle(io.StringIO("VAL 1\n"), io.StringIO(),
                          modulus=101)
    oracle({"y": 3})
    assert oracle.writer.getvalue() == "EVAL y=3 mod 101\n"


def test_stream_oracle_drives_reconstruction():
    # peer answering (x+1)/(x-5)/25 for x = 1, 2, ... with a pole at 5
    lines = []
    for t in range(1, 12):
        if t == 5:
            lines.append("FAIL pole")
        else:
            v = Fraction(t + 1, (t - 5) * 25)
            lines.append("VAL %d/%d" % (v.numerator, v.denominator))
    oracle = StreamOracle(io.StringIO("\n".join(lines) + "\n"),
                          io.StringIO())
    rf = blind_reconstruct_univariate(oracle, "x")
    assert poly_to_string(rf.numerator) == "1/25 + 1/25*x"
