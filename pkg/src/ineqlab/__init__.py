"""Entropy inequality prover, counterexample search, translations and classical regions."""

from .core import LinForm, lf_cond_entropy, lf_entropy, lf_mutual
from .parser import parse_ci, parse_expr, parse_statement
from .prover import disprove, implies, verify

__all__ = [
    "LinForm", "disprove", "implies", "lf_cond_entropy", "lf_entropy", "lf_mutual",
    "parse_ci", "parse_expr", "parse_statement", "verify",
]
__version__ = "0.1.0"
