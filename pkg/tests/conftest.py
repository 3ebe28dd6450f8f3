"""Shared fixtures: variable tables, a parser-backed polynomial builder,
and the randomized rational-function suite several acceptance criteria
share (computed once per session)."""

import random
from fractions import Fraction

import pytest

from partfrac import (DenominatorSet, Polynomial, VarTable, divexact,
                      multivariate_apart)
from partfrac.frontend.parser import parse, evaluate


@pytest.fixture(scope="session")
def txy():
    return VarTable(("x", "y"))


@pytest.fixture(scope="session")
def txyz():
    return VarTable(("x", "y", "z"))


def build(table, text):
    """Polynomial from an expression string (must be denominator-free)."""
    q = evaluate(parse(text), table)
    assert not q.pieces, "build() wants a polynomial"
    return q.numerator


@pytest.fixture(scope="session")
def P(txy):
    return lambda text: build(txy, text)


@pytest.fixture(scope="session")
def P3(txyz):
    return lambda text: build(txyz, text)


def random_numerator(table, rng, max_degree=4, max_terms=4):
    n = len(table)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            mon = [0] * n
            budget = rng.randint(0, max_degree)
            for _ in range(budget):
                mon[rng.randrange(n)] += 1
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            terms[tuple(mon)] = terms.get(tuple(mon), 0) + c
        f = Polynomial(table, {m: Fraction(c) for m, c in terms.items() if c})
        if not f.is_zero():
            return f


def recombine_matches(decomposition, numerator, den_pieces):
    """Exact recombination check: decomposition == numerator/prod(pieces)."""
    num, den = decomposition.as_pair()
    target_den = Polynomial.constant(num.table, 1)
    for f, e in den_pieces:
        target_den = target_den * f**e
    # cross-multiplied equality avoids building any rational normal form
    return num * target_den == numerator * den


class SuiteCase:
    __slots__ = ("numerator", "pieces", "decomposition")

    def __init__(self, numerator, pieces, decomposition):
        self.numerator = numerator
        self.pieces = pieces
        self.decomposition = decomposition


@pytest.fixture(scope="session")
def factor_pool(txyz):
    # x and x+1 have no common zero, so requirement (i) checks bite
    f = lambda s: build(txyz, s)
    return [f("x"), f("y"), f("z"), f("x+1"), f("x+y"), f("x^2+y")]


def draw_case(pool, rng):
    k = rng.randint(1, 4)
    chosen = rng.sample(range(len(pool)), k)
    pieces = tuple((pool[i], rng.randint(1, 3)) for i in sorted(chosen))
    numerator = random_numerator(pool[0].table, rng)
    return numerator, pieces


@pytest.fixture(scope="session")
def suite5(factor_pool):
    """500 randomized cases with their default-order decompositions."""
    rng = random.Random(20260819)
    out = []
    for _ in range(500):
        numerator, pieces = draw_case(factor_pool, rng)
        dec = multivariate_apart(numerator, pieces)
        out.append(SuiteCase(numerator, pieces, dec))
    return out


@pytest.fixture(scope="session")
def pool_dens(factor_pool):
    return DenominatorSet(factor_pool)
