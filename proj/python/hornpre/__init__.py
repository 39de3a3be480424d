"""Precondition inference for constrained Horn clauses."""

from ._hornpre import (
    ParseError,
    Program,
    analyze,
    constraint_specialise,
    derivable,
    infer,
    np_extract,
    parse,
    partial_evaluate,
    print_program,
    run_main,
)

__all__ = [
    "ParseError",
    "Program",
    "analyze",
    "constraint_specialise",
    "derivable",
    "infer",
    "np_extract",
    "parse",
    "partial_evaluate",
    "print_program",
    "run_main",
]
