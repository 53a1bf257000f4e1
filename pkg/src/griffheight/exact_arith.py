"""Exact scalars.

Python ints are arbitrary precision and :class:`fractions.Fraction` keeps
numerator and denominator reduced with a positive denominator after every
operation, so both are used directly as the scalar types of the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, (int, _RationalABC, str)):
        raise TypeError(f"cannot convert {x!r} to an exact rational")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def int_pow(base, exp: int) -> Fraction:
    base = as_rational(base)
    if exp < 0 and base == 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return base**exp


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer string. Float notation is rejected."""
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    if any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def is_integral(x) -> bool:
    return as_rational(x).denominator == 1
