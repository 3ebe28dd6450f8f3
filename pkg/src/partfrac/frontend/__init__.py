"""Text interfaces: expression parsing, the command line, CAS exporters."""

from .parser import parse, to_string, evaluate, default_table, Quotient
from .exporters import (write_singular_basis_input, write_form_procedure,
                        format_basis_list, read_basis_list)

__all__ = [
    "parse", "to_string", "evaluate", "default_table", "Quotient",
    "write_singular_basis_input", "write_form_procedure",
    "format_basis_list", "read_basis_list",
]
