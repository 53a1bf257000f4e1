"""Exact Griffiths-height calculator for pencils of hypersurfaces in P(E)."""

from griffheight.exact_arith import Rational, binomial, int_pow, parse_rational, format_rational

__all__ = ["Rational", "binomial", "int_pow", "parse_rational", "format_rational"]
__version__ = "0.1.0"
