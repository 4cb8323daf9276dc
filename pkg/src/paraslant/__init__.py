"""Slant-curve geometry in 3-dimensional normal almost paracontact metric manifolds."""

from . import errors
from .expr import (
    ScalarExpr,
    Var,
    Const,
    differentiate,
    evaluate,
    parse_expr,
    simplify,
    substitute,
    to_text,
)

__all__ = [
    "errors",
    "ScalarExpr",
    "Var",
    "Const",
    "differentiate",
    "evaluate",
    "parse_expr",
    "simplify",
    "substitute",
    "to_text",
]

__version__ = "0.1.0"
