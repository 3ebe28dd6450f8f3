"""File generators for the two external back ends.

One writes a Singular job that computes the inverse-denominator basis
and saves it in a list format this package can read back; the other
writes a Form procedure whose identity statements replace each basis
element's leading term inside a repeat loop. Files are emitted for the
user to run; no external process is ever spawned.
"""

import os

from ..errors import PartfracError
from ..order import MonomialOrder, format_order_spec
from ..ring import Polynomial, poly_to_string
from .parser import parse, evaluate

SINGULAR_INPUT = "apartbasisin.sing"
SINGULAR_OUTPUT = "apartbasisout.m"
FORM_MAIN = "apartreduce.h"
FORM_SYMBOLS = "apartreducesymbols.h"
FORM_RULES = "apartreducerules.h"

TMPDIR_ENV = "PARTFRAC_TMPDIR"


def output_directory(directory=None):
    """Resolve the target directory, honoring the env override."""
    if directory is None:
        directory = os.environ.get(TMPDIR_ENV, ".")
    os.makedirs(directory, exist_ok=True)
    return directory


def _compact(f):
    """Singular/Mathematica-friendly rendering: no spaces."""
    return poly_to_string(f).replace(" ", "")


def write_singular_basis_input(dens, spec=None, directory=None):
    """Write a Singular job computing the basis of {q_i*d_i - 1}.

    The job declares the block ordering as nested dp() blocks, runs
    slimgb, and saves the result to `apartbasisout.m` as a braced list
    that read_basis_list can parse back. Returns the job file path.
    """
    if not dens.factors:
        raise PartfracError("nothing to compute: empty denominator list")
    if spec is None:
        spec = dens.default_order_spec()
    order = MonomialOrder.from_spec(spec, dens.table)
    names = []
    weights = []
    for block in order.blocks:
        names.extend(block)
        weights.append("dp(%d)" % len(block))
    directory = output_directory(directory)
    path = os.path.join(directory, SINGULAR_INPUT)
    lines = []
    lines.append("// inverse-denominator basis job")
    lines.append("// order: %s" % format_order_spec(order.blocks))
    lines.append("ring r = 0, (%s), (%s);" % (",".join(names),
                                              ",".join(weights)))
    gens = [_compact(g) for g in dens.ideal_generators()]
    lines.append("ideal i =")
    for k, g in enumerate(gens):
        sep = ";" if k == len(gens) - 1 else ","
        lines.append("  %s%s" % (g, sep))
    lines.append("option(redSB);")
    lines.append("ideal g = slimgb(i);")
    lines.append('link out = ":w %s";' % SINGULAR_OUTPUT)
    lines.append('write(out, "{");')
    lines.append("int k;")
    lines.append("for (k = 1; k <= size(g); k++)")
    lines.append("{")
    lines.append('  if (k < size(g)) { write(out, string(g[k]) + ","); }')
    lines.append("  else { write(out, string(g[k])); }")
    lines.append("}")
    lines.append('write(out, "}");')
    lines.append("close(out);")
    lines.append('"basis written to %s";' % SINGULAR_OUTPUT)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def format_basis_list(elements):
    """The braced-list format the Singular job writes its basis in."""
    body = ",\n".join(_compact(e) for e in elements)
    return "{\n%s\n}\n" % body


def read_basis_list(text, table):
    """Parse a braced basis list back into polynomials over `table`."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise PartfracError("basis list must be brace-delimited")
    out = []
    for chunk in text[1:-1].split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        q = evaluate(parse(chunk), table)
        if q.pieces:
            raise PartfracError("basis element is not polynomial: %r" % chunk)
        out.append(q.numerator)
    return out


def _form_monomial(table, mon):
    parts = []
    for name, e in zip(table.names, mon):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


def write_form_procedure(basis, directory=None):
    """Write the Form reduction procedure for a reduced basis.

    `apartreducesymbols.h` declares the symbols in the order-significant
    sequence of the basis ordering, `apartreducerules.h` holds one id
    statement per element replacing its leading term, and
    `apartreduce.h` wires both into a repeat-until-done procedure.
    Returns the main file path.
    """
    if not basis.reduced:
        raise PartfracError("Form rules require a reduced basis")
    order = basis.order
    table = order.table
    directory = output_directory(directory)

    symbol_seq = [name for block in order.blocks for name in block]
    with open(os.path.join(directory, FORM_SYMBOLS), "w") as fh:
        fh.write("* symbol order matters: keep this file as generated\n")
        fh.write("Symbols %s;\n" % ",".join(symbol_seq))

    rules = []
    for e in basis.elements:
        lm, lc = order.leading_term(e)
        tail = Polynomial(table, {m: -c / lc for m, c in e.terms if m != lm})
        rules.append("id %s = %s;" % (_form_monomial(table, lm),
                                      poly_to_string(tail)))
    with open(os.path.join(directory, FORM_RULES), "w") as fh:
        fh.write("* one replacement per basis element, leading term first\n")
        for line in rules:
            fh.write(line + "\n")

    path = os.path.join(directory, FORM_MAIN)
    with open(path, "w") as fh:
        fh.write("* reduction procedure over the inverse-denominator basis\n")
        fh.write("* do not redefine these symbols elsewhere\n")
        fh.write("#include %s\n" % FORM_SYMBOLS)
        fh.write("\n")
        fh.write("#procedure apartreduce(EXPR)\n")
        fh.write("repeat;\n")
        fh.write("#include %s\n" % FORM_RULES)
        fh.write("endrepeat;\n")
        fh.write(".sort\n")
        fh.write("#endprocedure\n")
    return path
