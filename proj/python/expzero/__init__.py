"""Exact and numeric tools for exponential polynomials."""

from ._core import (
    BudgetError,
    ContractError,
    DegenerateInputError,
    Error,
    ExpPoly,
    MalformedTermError,
    NumericRangeError,
    ParseError,
    ProbeInconclusiveError,
    decompose,
    factor,
    parse,
    pipeline,
    reduce,
    rotundity,
    solve,
    variety,
)


def height(text):
    return parse(text).height


__all__ = [
    "BudgetError",
    "ContractError",
    "DegenerateInputError",
    "Error",
    "ExpPoly",
    "MalformedTermError",
    "NumericRangeError",
    "ParseError",
    "ProbeInconclusiveError",
    "decompose",
    "factor",
    "height",
    "parse",
    "pipeline",
    "reduce",
    "rotundity",
    "solve",
    "variety",
]
