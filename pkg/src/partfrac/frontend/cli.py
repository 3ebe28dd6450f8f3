"""Command line interface.

One subcommand per pipeline stage: `apart` runs the whole chain,
`abbrev`, `order`, `basis` and `reduce` expose the intermediate steps,
`leinartas` and `guess-den` cover the classical decomposition and the
numeric denominator guess, and the export commands write job files for
external computer algebra runs.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from ..apart import (AbbreviatedExpression, abbreviate_denominators,
                     apart_basis, apart_reduce, Decomposition, DenominatorSet,
                     multivariate_apart, normalize_and_factor, _atom_string)
from ..errors import PartfracError
from ..leinartas import leinartas_decompose
from ..order import parse_order_spec, format_order_spec
from ..reconstruct import anchor_at, find_anchor, guess_denominator
from ..ring import poly_to_string, VarTable
from .exporters import write_form_procedure, write_singular_basis_input
from .parser import collect_names, default_table, evaluate, parse


def _split_semicolons(text):
    items = [s.strip() for s in text.split(";")]
    out = [s for s in items if s]
    if not out:
        raise PartfracError("empty list: %r" % text)
    return out


def _table_for(nodes, vars_arg):
    names = set()
    for node in nodes:
        names |= collect_names(node)
    if vars_arg is None:
        return default_table(names)
    declared = [s.strip() for s in vars_arg.split(",") if s.strip()]
    if len(set(declared)) != len(declared):
        raise PartfracError("repeated name in --vars")
    missing = sorted(names - set(declared))
    if missing:
        raise PartfracError("undeclared variables: %s" % ", ".join(missing))
    return VarTable(tuple(declared))


def _polynomial_factors(sources, nodes, table):
    """Evaluate denominator entries; each must be a nonconstant polynomial."""
    factors = []
    seen = set()
    for src, node in zip(sources, nodes):
        q = evaluate(node, table)
        if q.pieces:
            raise PartfracError("denominator factor %r has a denominator of "
                                "its own" % src)
        f = q.numerator.monic_normalized()
        if f.is_constant():
            raise PartfracError("denominator factor %r is constant" % src)
        if f.terms in seen:
            raise PartfracError("duplicate denominator factor %r" % src)
        seen.add(f.terms)
        factors.append(f)
    return factors


def _denominator_set(args, extra_nodes=()):
    sources = _split_semicolons(args.dens)
    nodes = [parse(s, implicit_mul=args.implicit_mul) for s in sources]
    table = _table_for(nodes + list(extra_nodes), args.vars)
    return DenominatorSet(_polynomial_factors(sources, nodes, table))


def _order_spec(args):
    return parse_order_spec(args.order) if args.order is not None else None


def _terms_json(pairs):
    terms = []
    for num, factors in pairs:
        terms.append({
            "numerator": poly_to_string(num),
            "denominator_factors": [[poly_to_string(f), e] for f, e in factors],
        })
    return json.dumps({"terms": terms}, indent=2)


def _cmd_apart(args):
    node = parse(args.expr, implicit_mul=args.implicit_mul)
    known_nodes = []
    if args.known is not None:
        known_nodes = [parse(s, implicit_mul=args.implicit_mul)
                       for s in _split_semicolons(args.known)]
    table = _table_for([node] + known_nodes, args.vars)
    q = evaluate(node, table)
    known = None
    if known_nodes:
        known = DenominatorSet(_polynomial_factors(
            _split_semicolons(args.known), known_nodes, table))
    dec = multivariate_apart(q.numerator, q.pieces, known=known,
                             order_spec=_order_spec(args),
                             partition_size=args.partition)
    if args.json:
        print(_terms_json(dec.terms))
    else:
        print(dec.to_string())


def _cmd_abbrev(args):
    node = parse(args.expr, implicit_mul=args.implicit_mul)
    known_nodes = []
    if args.known is not None:
        known_nodes = [parse(s, implicit_mul=args.implicit_mul)
                       for s in _split_semicolons(args.known)]
    table = _table_for([node] + known_nodes, args.vars)
    q = evaluate(node, table)
    known = None
    if known_nodes:
        known = DenominatorSet(_polynomial_factors(
            _split_semicolons(args.known), known_nodes, table))
    r = normalize_and_factor(q.numerator, q.pieces)
    expr = abbreviate_denominators(r, x_table=table, known=known,
                                   strict=args.strict)
    print(poly_to_string(expr.body))
    for line in expr.dens.substitutions():
        print(line)


def _cmd_order(args):
    dens = _denominator_set(args)
    print(format_order_spec(dens.default_order_spec()))


def _cmd_basis(args):
    dens = _denominator_set(args)
    basis = apart_basis(dens, _order_spec(args))
    for line in basis.to_lines():
        print(line)


def _cmd_reduce(args):
    node = parse(args.expr, implicit_mul=args.implicit_mul)
    dens = _denominator_set(args)
    missing = sorted(collect_names(node) - set(dens.table.names))
    if missing:
        raise PartfracError("unknown names in expression: %s (factors are "
                            "q1..q%d)" % (", ".join(missing), len(dens)))
    basis = apart_basis(dens, _order_spec(args))
    q = evaluate(node, dens.table)
    if q.pieces:
        raise PartfracError("expression must be polynomial in the inverse "
                            "symbols; divide by nothing but numbers")
    reduced = apart_reduce(AbbreviatedExpression(q.numerator, dens), basis)
    print(poly_to_string(reduced.body))


def _cmd_leinartas(args):
    node = parse(args.expr, implicit_mul=args.implicit_mul)
    table = _table_for([node], args.vars)
    q = evaluate(node, table)
    r = normalize_and_factor(q.numerator, q.pieces)
    terms = leinartas_decompose(r)
    pairs = [(t.numerator, t.denominator_factors()) for t in terms]
    if args.json:
        print(_terms_json(pairs))
    else:
        print(Decomposition(pairs, table).to_string())


def _parse_assignment(text):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, _, value = item.partition("=")
        name = name.strip()
        try:
            out[name] = int(value.strip())
        except ValueError:
            raise PartfracError("assignment needs integers: %r" % item)
        if not name:
            raise PartfracError("assignment needs names: %r" % item)
    if not out:
        raise PartfracError("empty assignment: %r" % text)
    return out


def _cmd_guess_den(args):
    node = parse(args.expr, implicit_mul=args.implicit_mul)
    table = _table_for([node], args.vars)
    q = evaluate(node, table)
    r = normalize_and_factor(q.numerator, q.pieces)
    factors = [f for f, _ in r.denominator_factors]
    if not factors:
        raise PartfracError("the expression has no denominator to guess")
    if args.at is not None:
        anchor = anchor_at(factors, _parse_assignment(args.at))
    else:
        anchor = find_anchor(factors, rng=random.Random(args.seed))
    value = r.numerator.evaluate(anchor.assignment) * r.constant
    for (f, e), fval in zip(r.denominator_factors, anchor.values):
        value = value / Fraction(fval)**e
    guess = guess_denominator(value, anchor)
    print("anchor: %s" % " ".join(
        "%s=%d" % (n, anchor.assignment[n]) for n in table.names))
    print("value: %s" % value)
    for f, fval, p, e in zip(factors, anchor.values, anchor.primes,
                             guess.exponents):
        print("%s: value %s, prime %d, exponent %d"
              % (poly_to_string(f), fval, p, e))
    print("residual: %d" % guess.residual)
    pieces = [(f, e) for f, e in zip(factors, guess.exponents) if e]
    print("denominator: %s"
          % ("*".join(_atom_string(f, e) for f, e in pieces) if pieces else "1"))


def _cmd_export_singular(args):
    dens = _denominator_set(args)
    path = write_singular_basis_input(dens, _order_spec(args),
                                      directory=args.dir)
    print(path)


def _cmd_export_form(args):
    dens = _denominator_set(args)
    basis = apart_basis(dens, _order_spec(args))
    print(write_form_procedure(basis, directory=args.dir))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", metavar="NAMES",
                        help="comma separated variable order (default: sorted "
                             "names found in the input)")
    common.add_argument("--implicit-mul", action="store_true",
                        help="allow juxtaposition like 2y for 2*y")

    dens_opt = argparse.ArgumentParser(add_help=False)
    dens_opt.add_argument("--dens", required=True, metavar="FACTORS",
                          help="semicolon separated denominator factors; "
                               "q-symbols number them in this order")

    order_opt = argparse.ArgumentParser(add_help=False)
    order_opt.add_argument("--order", metavar="SPEC",
                           help="block order like {{q3,q1},{q2},{x,y}} "
                                "(default: computed from the factors)")

    top = argparse.ArgumentParser(
        prog="partfrac",
        description="Multivariate partial fractions through Groebner bases.")
    sub = top.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("apart", parents=[common, order_opt],
                       help="decompose a rational function")
    p.add_argument("expr", help="rational function, e.g. (2*y-x)/(y*(x+y)*(y-x))")
    p.add_argument("--known", metavar="FACTORS",
                   help="semicolon separated factors to keep symbols for")
    p.add_argument("--partition", type=int, metavar="N",
                   help="reduce iteratively over denominator subsets of size N")
    p.add_argument("--json", action="store_true",
                   help="machine readable term list")
    p.set_defaults(func=_cmd_apart)

    p = sub.add_parser("abbrev", parents=[common],
                       help="replace denominator factors by inverse symbols")
    p.add_argument("expr")
    p.add_argument("--known", metavar="FACTORS",
                   help="semicolon separated factors to keep symbols for")
    p.add_argument("--strict", action="store_true",
                   help="fail on factors outside the known set")
    p.set_defaults(func=_cmd_abbrev)

    p = sub.add_parser("order", parents=[common, dens_opt],
                       help="print the block order for a denominator set")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("basis", parents=[common, dens_opt, order_opt],
                       help="print the reduced Groebner basis of the "
                            "inverse-symbol ideal")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("reduce", parents=[common, dens_opt, order_opt],
                       help="normal form of an expression in the inverse "
                            "symbols")
    p.add_argument("expr", help="polynomial in q1..qn and the variables")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("leinartas", parents=[common],
                       help="classical decomposition: common zeros, "
                            "independence, reduced numerators")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true",
                   help="machine readable term list")
    p.set_defaults(func=_cmd_leinartas)

    p = sub.add_parser("guess-den", parents=[common],
                       help="guess denominator exponents from one rational "
                            "value at an anchor point")
    p.add_argument("expr")
    p.add_argument("--at", metavar="ASSIGN",
                   help="anchor assignment like x=7,y=5 (default: search)")
    p.add_argument("--seed", type=int,
                   help="seed for the anchor search")
    p.set_defaults(func=_cmd_guess_den)

    p = sub.add_parser("export-singular", parents=[common, dens_opt, order_opt],
                       help="write a Singular job computing the basis")
    p.add_argument("--dir", metavar="DIR",
                   help="output directory (default: $PARTFRAC_TMPDIR or .)")
    p.set_defaults(func=_cmd_export_singular)

    p = sub.add_parser("export-form", parents=[common, dens_opt, order_opt],
                       help="write a Form procedure applying the basis as "
                            "substitution rules")
    p.add_argument("--dir", metavar="DIR",
                   help="output directory (default: $PARTFRAC_TMPDIR or .)")
    p.set_defaults(func=_cmd_export_form)

    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except PartfracError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
