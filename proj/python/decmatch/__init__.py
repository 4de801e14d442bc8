"""Decremental approximate maximum-weight matching."""

from fractions import Fraction

from ._decmatch import (
    ConfigError,
    Engine,
    Graph,
    Orchestrator,
    ParseError,
    exact_mwm,
    generate,
    run,
    static_match,
)
from ._decmatch import frac_solve as _frac_solve

__all__ = [
    "ConfigError",
    "Engine",
    "Graph",
    "Orchestrator",
    "ParseError",
    "exact_mwm",
    "frac_solve",
    "generate",
    "run",
    "static_match",
]


def frac_solve(graph, kappa=Fraction(1), inv_eps=5):
    """Returns (value, {edge: value}, iterations) with exact fractions."""
    value, x, iterations = _frac_solve(graph, str(Fraction(kappa)), inv_eps)
    return Fraction(value), {e: Fraction(v) for e, v in x.items()}, iterations
