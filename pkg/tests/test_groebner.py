"""Buchberger completion, normal forms, cofactor tracking."""

import pytest
from fractions import Fraction

from partfrac import (DenominatorSet, GroebnerBasis, Ideal, MonomialOrder,
                      Polynomial, VarTable, apart_basis, buchberger,
                      normal_form, poly_to_string)
from partfrac.groebner import (buchberger_with_cofactors, contains_one,
                               normal_form_with_cofactors, s_polynomial)

from conftest import build


@pytest.fixture(scope="module")
def trio(txy):
    f = lambda s: build(txy, s)
    dens = DenominatorSet([f("x-y"), f("y"), f("x+y")])
    basis = apart_basis(dens)
    return dens, basis


def test_trio_basis_elements(trio):
    dens, basis = trio
    assert basis.reduced
    assert basis.to_lines() == [
        "-1 + q2*y",
        "-1 + q1*x - q1*y",
        "-1 + q3*x + q3*y",
        "-q1*q2 + 2*q1*q3 + q2*q3",
    ]


def test_normal_form_triple_product(trio):
    dens, basis = trio
    body = build(dens.table, "q1*q2*q3")
    nf = normal_form(body, basis)
    assert poly_to_string(nf) == "1/2*q1*q2^2 - 1/2*q2^2*q3"
    # normal forms are fixed points
    assert normal_form(nf, basis) == nf


def test_normal_form_is_linear(trio):
    dens, basis = trio
    t = dens.table
    a = build(t, "q1*q2*q3*x - 2*q1*q2*q3*y")
    b = build(t, "q1^2*q3 + q2")
    assert normal_form(a + b, basis) == \
        normal_form(a, basis) + normal_form(b, basis)


def test_normal_form_respects_ideal(trio):
    dens, basis = trio
    t = dens.table
    # every generator reduces to zero
    for g in dens.ideal_generators():
        assert normal_form(g, basis).is_zero()
    # and so does any combination of them
    mix = Polynomial.zero(t)
    for i, g in enumerate(dens.ideal_generators()):
        mix = mix + build(t, "q%d + x" % (i + 1)) * g
    assert normal_form(mix, basis).is_zero()


def test_s_polynomial_cancels_leads(trio):
    dens, basis = trio
    order = basis.order
    f, g = basis[1], basis[2]
    s = s_polynomial(f, g, order)
    from partfrac.ring import mon_lcm
    big = mon_lcm(order.leading_monomial(f), order.leading_monomial(g))
    assert order.key(order.leading_monomial(s)) < order.key(big)
    # S-polynomials of basis elements reduce to zero
    for a in basis:
        for b in basis:
            if a is not b:
                assert normal_form(s_polynomial(a, b, order), basis).is_zero()


def test_contains_one():
    t = VarTable(("x",))
    x = Polynomial.variable(t, "x")
    one_in = buchberger(Ideal([x, x + 1]), MonomialOrder.degrevlex(t))
    assert one_in.contains_one() and contains_one(one_in)
    proper = buchberger(Ideal([x]), MonomialOrder.degrevlex(t))
    assert not proper.contains_one()


def test_buchberger_empty_and_constant(txy):
    order = MonomialOrder.degrevlex(txy)
    c = Polynomial.constant(txy, 3)
    basis = buchberger(Ideal([c]), order)
    assert basis.contains_one()
    assert len(basis) == 1 and basis[0].is_one()


def test_autoreduced_output(trio):
    dens, basis = trio
    order = basis.order
    # reduced basis: no term of any element is divisible by another lead
    from partfrac.ring import mon_divides
    leads = [order.leading_monomial(g) for g in basis]
    for i, g in enumerate(basis):
        for mon, _ in g.terms:
            for j, lead in enumerate(leads):
                if i == j:
                    continue
                assert not mon_divides(lead, mon)
    # integer-primitive, positive lead under the active order
    for g in basis:
        cont, prim = g.primitive()
        assert abs(cont) == 1
        assert order.leading_term(g)[1] > 0


def test_cofactors_recombine(trio):
    dens, basis = trio
    gens = dens.ideal_generators()
    order = basis.order
    elements, rows = buchberger_with_cofactors(Ideal(gens), order)
    assert list(elements) == list(basis.elements)
    for g, row in zip(elements, rows):
        acc = Polynomial.zero(dens.table)
        for c, gen in zip(row, gens):
            acc = acc + c * gen
        assert acc == g


def test_normal_form_with_cofactors(trio):
    dens, basis = trio
    t = dens.table
    p = build(t, "q1*q2*q3 + x*q1 - 3")
    nf, cof = normal_form_with_cofactors(p, basis.elements, basis.order)
    assert nf == normal_form(p, basis)
    acc = Polynomial.zero(t)
    for c, g in zip(cof, basis.elements):
        acc = acc + c * g
    assert acc + nf == p


def test_unreduced_wrapper_reduces(trio):
    dens, basis = trio
    raw = GroebnerBasis(tuple(dens.ideal_generators()), basis.order,
                        reduced=False)
    p = build(dens.table, "q2*y*x")
    out = normal_form(p, raw)
    # sequence-dependent but still an ideal-equivalent remainder
    assert normal_form(p - out, basis).is_zero()
