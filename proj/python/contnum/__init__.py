"""Numerals for reals in continuous logic."""

from ._contnum import (
    ContnumError,
    build,
    classify,
    dyadic_numeral,
    evaluate,
    free_vars,
    run_acceptance,
    suite_names,
    verify,
)

__all__ = [
    "ContnumError",
    "build",
    "classify",
    "dyadic_numeral",
    "evaluate",
    "free_vars",
    "run_acceptance",
    "suite_names",
    "verify",
]
