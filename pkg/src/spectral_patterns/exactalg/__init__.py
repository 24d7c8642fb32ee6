"""Exact scalars, sparse multivariate polynomials and rational functions."""

from .gcd import divides, exact_div, gcd, gcd_many, lcm, primitive_part
from .poly import TAU_CONTEXT, X_CONTEXT, XT_CONTEXT, MultiPoly, VariableContext
from .ratfunc import RationalFunction
from .scalars import GaussianRational, I, format_fraction, parse_fraction


def weighted_degree(p: MultiPoly, weights) -> int:
    return p.weighted_degree(weights)


def evaluate(p: MultiPoly, point):
    return p.evaluate(point)


__all__ = [
    "GaussianRational",
    "I",
    "MultiPoly",
    "RationalFunction",
    "TAU_CONTEXT",
    "VariableContext",
    "XT_CONTEXT",
    "X_CONTEXT",
    "divides",
    "evaluate",
    "exact_div",
    "format_fraction",
    "gcd",
    "gcd_many",
    "lcm",
    "parse_fraction",
    "primitive_part",
    "weighted_degree",
]
