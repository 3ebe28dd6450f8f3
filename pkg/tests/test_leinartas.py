"""Common-zero and independence analysis, the two-step decomposition,
and the classical one-variable-at-a-time comparison path."""

import pytest

from partfrac import (Polynomial, VarTable, annihilator, have_common_zero,
                      is_algebraically_independent, iterated_univariate_apart,
                      leinartas_decompose, normalize_and_factor,
                      nullstellensatz_cofactors, poly_to_string,
                      spurious_factors, verify_leinartas_form)

from conftest import build

PRINTED_ANNIHILATOR = (
    "y1^4 - 4*y1^3*y2^2 - 4*y1^3*y3 + 3*y1^3 + 6*y1^2*y2^4 + 4*y1^2*y2^2*y3"
    " - y1^2*y2^2 + 8*y1^2*y2*y3^2 - 6*y1^2*y2*y3 - 8*y1^2*y2 - 2*y1^2*y3^3"
    " + 6*y1^2*y3^2 - 2*y1^2*y3 + 3*y1^2 - 4*y1*y2^6 + 4*y1*y2^4*y3"
    " - 7*y1*y2^4 - 16*y1*y2^3*y3^2 + 12*y1*y2^3*y3 - 8*y1*y2^3"
    " + 4*y1*y2^2*y3^3 + 4*y1*y2^2*y3^2 + 36*y1*y2^2*y3 - 16*y1*y2*y3^3"
    " - 18*y1*y2*y3^2 + 2*y1*y2*y3 - 5*y1*y2 + 4*y1*y3^4 + 2*y1*y3^3"
    " - y1*y3^2 + 2*y1*y3 + y2^8 - 4*y2^6*y3 + 5*y2^6 + 8*y2^5*y3^2"
    " - 6*y2^5*y3 - 2*y2^4*y3^3 + 6*y2^4*y3^2 - 2*y2^4*y3 + 5*y2^4"
    " - 16*y2^3*y3^3 - 14*y2^3*y3^2 - 2*y2^3*y3 + 20*y2^2*y3^4"
    " + 6*y2^2*y3^3 - 8*y2*y3^5 + 5*y2*y3^4 + y3^6 - 2*y3^5")


@pytest.fixture(scope="module")
def tx():
    return VarTable(("x",))


def fold_terms(terms, table):
    """Recombine LeinartasTerm objects into one (num, den) pair."""
    n_acc = Polynomial.zero(table)
    d_acc = Polynomial.constant(table, 1)
    for tm in terms:
        den = Polynomial.constant(table, 1)
        for f, a in tm.denominator_factors():
            den = den * f**a
        n_acc = n_acc * den + tm.numerator * d_acc
        d_acc = d_acc * den
    return n_acc, d_acc


def test_have_common_zero(tx, P):
    f = lambda s: build(tx, s)
    assert not have_common_zero([f("x"), f("x+1")])
    assert have_common_zero([P("x"), P("y")])
    assert have_common_zero([P("x-y"), P("y"), P("x+y")])
    assert have_common_zero([P("x^3+y^4"), P("x+y^2"), P("x^2+y")])


def test_nullstellensatz_cofactors(tx):
    f = lambda s: build(tx, s)
    pairs = [(f("x"), 1), (f("x+1"), 1)]
    cofs = nullstellensatz_cofactors(pairs)
    assert [poly_to_string(c) for c in cofs] == ["-1", "1"]
    # the certificate really sums to one, powers included
    pairs = [(f("x"), 2), (f("x+1"), 1)]
    cofs = nullstellensatz_cofactors(pairs)
    acc = Polynomial.zero(tx)
    for c, (g, a) in zip(cofs, pairs):
        acc = acc + c * g**a
    assert acc.is_one()


def test_annihilator_goldens(tx, P):
    a = annihilator([P("x-y"), P("y"), P("x+y")])
    assert poly_to_string(a.polynomial) == "y1 + 2*y2 - y3"
    assert a.names == ("y1", "y2", "y3")
    assert a.substituted().is_zero()
    f = lambda s: build(tx, s)
    b = annihilator([f("x"), f("x+1")])
    assert poly_to_string(b.polynomial) == "1 + y1 - y2"
    assert b.substituted().is_zero()
    assert annihilator([P("x"), P("y")]) is None


def test_algebraic_independence(tx, P):
    assert is_algebraically_independent([P("x"), P("y")])
    assert is_algebraically_independent([P("x+y")])
    # more factors than variables: dependent without any elimination
    assert not is_algebraically_independent([P("x-y"), P("y"), P("x+y")])
    f = lambda s: build(tx, s)
    assert not is_algebraically_independent([f("x"), f("x+1")])


def test_annihilator_matches_printed_form(P):
    ty = VarTable(("y1", "y2", "y3"))
    printed = build(ty, PRINTED_ANNIHILATOR)
    assert len(printed.terms) == 49 and printed.total_degree() == 8
    a = annihilator([P("x^3+y^4"), P("x+y^2"), P("x^2+y")])
    assert a.polynomial == printed
    assert a.substituted().is_zero()


def test_decompose_goldens(tx):
    f = lambda s: build(tx, s)
    one = Polynomial.constant(tx, 1)
    r = normalize_and_factor(one, f("x"))
    assert [repr(tm) for tm in leinartas_decompose(r)] == \
        ["LeinartasTerm(1/x)"]
    r = normalize_and_factor(one, [f("x"), f("x+1")])
    assert [repr(tm) for tm in leinartas_decompose(r)] == \
        ["LeinartasTerm(-1/(1 + x))", "LeinartasTerm(1/x)"]


def test_decompose_shared_zero_case(txy, P):
    r = normalize_and_factor(P("2*x-y"), [P("x"), P("x+y"), P("x-y")])
    terms = leinartas_decompose(r)
    assert [repr(tm) for tm in terms] == \
        ["LeinartasTerm(1/(2*(x - y)*x))", "LeinartasTerm(3/(2*(x + y)*x))"]
    assert all(rep.ok for rep in verify_leinartas_form(terms))
    n, d = fold_terms(terms, txy)
    rn, rd = r.as_pair()
    assert n * rd == rn * d


def test_decompose_improper_input(tx):
    f = lambda s: build(tx, s)
    r = normalize_and_factor(f("x^3+1"), f("x-1"))
    assert [repr(tm) for tm in leinartas_decompose(r)] == \
        ["LeinartasTerm(1 + x + x^2)", "LeinartasTerm(2/(-1 + x))"]


def test_decompose_mixed_case_recombines(txy, P):
    r = normalize_and_factor(P("y+3"), [P("x"), P("x+1"), P("x-y")])
    terms = leinartas_decompose(r)
    assert all(rep.ok for rep in verify_leinartas_form(terms))
    # every term loses the disjoint-zero pairing {x, x+1}
    for tm in terms:
        bare = {poly_to_string(f) for f, _ in tm.denominator_factors()}
        assert not {"x", "1 + x"} <= bare
    n, d = fold_terms(terms, txy)
    rn, rd = r.as_pair()
    assert n * rd == rn * d


def test_verify_flags_violations(tx, txy, P):
    f = lambda s: build(tx, s)
    one2 = Polynomial.constant(txy, 1)
    reports = verify_leinartas_form([
        (Polynomial.constant(tx, 1), ((f("x"), 1), (f("x+1"), 1))),
        (one2, ((P("x^3+y^4"), 1), (P("x+y^2"), 1), (P("x^2+y"), 1))),
        (f("x"), ((f("x"), 1),)),
        (one2, ()),
    ])
    assert [rep.common_zero for rep in reports] == [False, True, True, True]
    assert [rep.independent for rep in reports] == [False, False, True, True]
    assert [rep.numerator_reduced for rep in reports] == \
        [False, True, False, True]
    assert [rep.ok for rep in reports] == [False, False, False, True]


def test_iterated_univariate_golden(tx):
    f = lambda s: build(tx, s)
    d = iterated_univariate_apart(f("x"), [(f("x-1"), 1), (f("x+1"), 2)])
    assert d.to_string() == \
        "1/(4*(-1 + x)) - 1/(4*(1 + x)) + 1/(2*(1 + x)^2)"
    d = iterated_univariate_apart(f("x^3+1"), f("x-1"))
    assert d.to_string() == "1 + x + x^2 + 2/(-1 + x)"


def test_iterated_univariate_spurious_poles(txy, P):
    one = Polynomial.constant(txy, 1)
    ref = [P("x+y"), P("x-y")]
    d = iterated_univariate_apart(one, ref)
    assert d.to_string() == "1/(2*(x - y)*y) - 1/(2*y*(x + y))"
    assert [poly_to_string(f) for f in spurious_factors(d, ref)] == ["y"]
    # eliminating in the other variable moves the spurious pole
    d2 = iterated_univariate_apart(one, ref, var_order=("y", "x"))
    assert d2.to_string() == "1/(2*(x - y)*x) + 1/(2*(x + y)*x)"
    assert [poly_to_string(f) for f in spurious_factors(d2, ref)] == ["x"]
    assert spurious_factors(d, [P("x+y"), P("x-y"), P("y")]) == ()
