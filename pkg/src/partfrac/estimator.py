"""Estimator-style wrapper around the reduction pipeline.

PartialFractionDecomposer follows the fit/transform protocol by duck
typing alone: fit learns a denominator factor set, the block order and
the Gröbner basis from example rational functions, transform rewrites
inputs as partial fractions over that fitted state. No framework import
is needed for it to sit in pipeline tooling that expects get_params,
set_params and fitted attributes with trailing underscores.
"""

from .apart import (DenominatorSet, RationalFunction, _den_pieces, _refine,
                    abbreviate_denominators, apart_basis, apart_reduce,
                    apart_reduce_iterated, AbbreviatedExpression,
                    canonical_factor_key, normalize_and_factor, restore)
from .errors import NotFittedError
from .frontend.parser import collect_names, default_table, evaluate, parse
from .order import parse_order_spec
from .ring import Polynomial, VarTable


def _input_names(item):
    """Names used by an input, or None when the item carries a table."""
    if isinstance(item, str):
        return collect_names(parse(item))
    return None


def _input_table(item):
    if isinstance(item, str):
        return None
    if isinstance(item, (RationalFunction, Polynomial)):
        return item.table
    num, _ = item
    return num.table


def _as_quotient(item, table):
    """(numerator, structured denominator) of an input over `table`."""
    if isinstance(item, str):
        q = evaluate(parse(item), table)
        return q.numerator, q.pieces
    if isinstance(item, RationalFunction):
        return (item.numerator.map_to(table) * item.constant,
                tuple((f.map_to(table), m)
                      for f, m in item.denominator_factors))
    if isinstance(item, Polynomial):
        return item.map_to(table), ()
    num, den = item
    return num.map_to(table), tuple(
        (f.map_to(table), m) for f, m in _den_pieces(den))


class PartialFractionDecomposer:
    """Learn a denominator basis from examples, then decompose with it.

    Parameters:
      vars: explicit variable order (comma string or name sequence);
        default is the sorted union of names seen during fit.
      order_spec: block order, as nested tuples or the braces syntax;
        default is computed from the fitted factors.
      strict: when True, transform raises UnknownFactorError on inputs
        whose denominator does not split over the fitted factors;
        when False such inputs get a temporarily extended basis.
      partition_size: chunk size for the iterated reduction of single
        quotients; None reduces in one pass.

    Fitted attributes: table_, dens_, factors_, order_, basis_.
    """

    def __init__(self, vars=None, order_spec=None, strict=False,
                 partition_size=None):
        self.vars = vars
        self.order_spec = order_spec
        self.strict = strict
        self.partition_size = partition_size

    # -- protocol plumbing ------------------------------------------

    def get_params(self, deep=True):
        return {"vars": self.vars, "order_spec": self.order_spec,
                "strict": self.strict,
                "partition_size": self.partition_size}

    def set_params(self, **params):
        valid = self.get_params()
        for key, value in params.items():
            if key not in valid:
                raise ValueError(
                    "invalid parameter %r for estimator %s; valid ones: %s"
                    % (key, type(self).__name__, ", ".join(sorted(valid))))
            setattr(self, key, value)
        return self

    def __repr__(self):
        shown = ", ".join("%s=%r" % (k, v)
                          for k, v in sorted(self.get_params().items())
                          if v not in (None, False))
        return "%s(%s)" % (type(self).__name__, shown)

    def _check_fitted(self):
        if not hasattr(self, "basis_"):
            raise NotFittedError(
                "this %s instance is not fitted yet; call fit first"
                % type(self).__name__)

    # -- fitting ----------------------------------------------------

    def _resolve_table(self, items):
        if self.vars is not None:
            names = self.vars
            if isinstance(names, str):
                names = [s.strip() for s in names.split(",") if s.strip()]
            table = VarTable(tuple(names))
        else:
            table = None
            for item in items:
                t = _input_table(item)
                if t is None:
                    continue
                if table is None:
                    table = t
                elif t != table:
                    raise ValueError("inputs live in different rings")
            if table is None:
                names = set()
                for item in items:
                    names |= _input_names(item)
                table = default_table(names)
        for item in items:
            used = _input_names(item)
            if used is not None and not used <= set(table.names):
                raise ValueError("undeclared variables: %s"
                                 % ", ".join(sorted(used - set(table.names))))
        return table

    def fit(self, X, y=None):
        items = list(X)
        if not items:
            raise ValueError("fit needs at least one example")
        table = self._resolve_table(items)
        pool = []
        for item in items:
            num, den = _as_quotient(item, table)
            r = normalize_and_factor(num, den)
            pool.extend(f for f, _ in r.denominator_factors)
        dens = DenominatorSet.empty(table).extended(
            sorted(_refine(pool), key=canonical_factor_key))
        spec = self.order_spec
        if isinstance(spec, str):
            spec = parse_order_spec(spec)
        self.table_ = table
        self.dens_ = dens
        self.factors_ = dens.factors
        self.basis_ = apart_basis(dens, spec)
        self.order_ = self.basis_.order
        self._extended_bases = {}
        return self

    # -- decomposing ------------------------------------------------

    def _basis_for(self, dens):
        if dens.factors == self.dens_.factors:
            return self.basis_
        key = tuple(f.terms for f in dens.factors)
        hit = self._extended_bases.get(key)
        if hit is None:
            hit = apart_basis(dens, None)
            self._extended_bases[key] = hit
        return hit

    def _decompose_one(self, item):
        num, den = _as_quotient(item, self.table_)
        r = normalize_and_factor(num, den)
        expr = abbreviate_denominators(r, x_table=self.table_,
                                       known=self.dens_, strict=self.strict)
        basis = self._basis_for(expr.dens)
        if self.partition_size is None or not expr.body.terms:
            reduced = apart_reduce(expr, basis)
        else:
            table = expr.dens.table
            qpos = [table.index[s] for s in expr.dens.symbols]
            qset = set(qpos)
            qexp = tuple(expr.body.terms[0][0][i] for i in qpos)
            xnum = Polynomial(table, {
                tuple(0 if i in qset else e for i, e in enumerate(mon)): c
                for mon, c in expr.body.terms})
            qpowers = {expr.dens.symbols[i]: e
                       for i, e in enumerate(qexp) if e}
            body = apart_reduce_iterated(xnum, qpowers, basis,
                                         partition_size=self.partition_size)
            reduced = AbbreviatedExpression(body, expr.dens)
        return restore(reduced.body, reduced.dens, basis.order)

    def transform(self, X):
        self._check_fitted()
        return [self._decompose_one(item) for item in X]

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)
