"""Truncated power series over Q and the coefficient identities

    [(1 + y)^n / (1 + a y)]^{[n - r]}
        = (-1)^r sum_{k=r}^{n} C(n, k) (-1)^k a^(k - r)
        = (-1)^(n + r) / a^r [ (a - 1)^n - sum_{k<r} C(n, k) (-1)^(n - k) a^k ]

where f^{[p]} is the coefficient of y^p in f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from griffheight.exact_arith import as_rational, binomial


@dataclass(frozen=True)
class FormalSeries:
    """Coefficients c_0..c_order of a power series truncated after y^order."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> "FormalSeries":
        """Pad with zeros or truncate to the given order."""
        cs = list(coeffs)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def one(cls, order: int) -> "FormalSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def binomial_power(cls, a, n: int, order: int) -> "FormalSeries":
        """(1 + a y)^n for n >= 0."""
        a = as_rational(a)
        return cls.from_coeffs([binomial(n, k) * a**k for k in range(min(n, order) + 1)], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, p: int) -> Fraction:
        if p < 0:
            return Fraction(0)
        if p > self.order:
            raise IndexError(f"coefficient {p} lies beyond truncation order {self.order}")
        return self.coeffs[p]

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        _check_orders(self, other)
        return FormalSeries(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        return series_mul(self, other)

    def __str__(self):
        terms = [f"{c}*y^{i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(y^{self.order + 1})"


def _check_orders(f: FormalSeries, g: FormalSeries):
    if f.order != g.order:
        raise ValueError(f"truncation orders differ: {f.order} vs {g.order}")


def series_mul(f: FormalSeries, g: FormalSeries) -> FormalSeries:
    _check_orders(f, g)
    n = f.order
    out = [Fraction(0)] * (n + 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j in range(n + 1 - i):
            out[i + j] += fi * g.coeffs[j]
    return FormalSeries(tuple(out))


def series_inverse(f: FormalSeries) -> FormalSeries:
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    g = [1 / c0]
    for p in range(1, f.order + 1):
        s = sum(f.coeffs[k] * g[p - k] for k in range(1, p + 1))
        g.append(-s / c0)
    return FormalSeries(tuple(g))


def _check_range(n: int, r: int):
    if n < 0 or not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")


def ratio_coefficient(n: int, a, p: int) -> Fraction:
    """Coefficient of y^p in (1 + y)^n / (1 + a y) by series expansion; 0 for p < 0."""
    if p < 0:
        return Fraction(0)
    order = max(n, p)
    num = FormalSeries.binomial_power(1, n, order)
    den = FormalSeries.binomial_power(a, 1, order)
    return series_mul(num, series_inverse(den))[p]


def coeff_bruteforce(n: int, r: int, a) -> Fraction:
    _check_range(n, r)
    return ratio_coefficient(n, a, n - r)


def coeff_closed_first(n: int, r: int, a) -> Fraction:
    _check_range(n, r)
    a = as_rational(a)
    total = sum(binomial(n, k) * (-1) ** k * a ** (k - r) for k in range(r, n + 1))
    return (-1) ** r * Fraction(total)


def coeff_closed_second(n: int, r: int, a) -> Fraction:
    _check_range(n, r)
    a = as_rational(a)
    if a == 0:
        raise ZeroDivisionError("second closed form divides by a^r; a must be nonzero")
    correction = sum(binomial(n, k) * (-1) ** (n - k) * a**k for k in range(r))
    return (-1) ** (n + r) * ((a - 1) ** n - correction) / a**r
