"""Closed-form coefficients and stable Griffiths heights.

Every quantity here is an exact :class:`~fractions.Fraction`. Where a value
has a second derivation (Chow-ring integrals, per-point Euler
characteristics, the factored and unfactored forms of a coefficient) both
are exposed so callers can compare them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable

from griffheight import chow
from griffheight.chow import PencilGeometry
from griffheight.exact_arith import binomial
from griffheight.series import coeff_closed_second, ratio_coefficient


@dataclass(frozen=True)
class SingularFiberData:
    """Multiset of multiplicities delta_P >= 2 of the critical points."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: Counter[int] = Counter()
        for delta, count in self.entries:
            if isinstance(delta, bool) or not isinstance(delta, int) or delta < 2:
                raise ValueError(f"multiplicity must be an integer >= 2, got {delta!r}")
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise ValueError(f"count must be a positive integer, got {count!r}")
            merged[delta] += count
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def from_deltas(cls, deltas: Iterable[int]) -> "SingularFiberData":
        return cls(tuple(Counter(deltas).items()))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return sum(c for _, c in self.entries)


@dataclass(frozen=True)
class StratificationData:
    """Multiplicities and open-stratum Euler characteristics of a singular fiber.

    ``components`` holds (m_i, chi(D_i minus D^2)); ``pairs`` holds
    (m_i, m_j, chi(D_ij minus D^3)) for i < j.
    """

    N: int
    components: tuple[tuple[int, int], ...] = ()
    pairs: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        ms = [m for m, _ in self.components] + [m for p in self.pairs for m in p[:2]]
        if any(m < 1 for m in ms):
            raise ValueError("multiplicities must be positive")
        if self.N < 1:
            raise ValueError("N must be positive")


@dataclass
class HeightReport:
    ht_int: Fraction
    sigma_count_lhs: int
    sigma_count_rhs: Fraction
    feasible: bool
    stable_height_closed: Fraction
    stable_height_chow: Fraction
    agree: bool = field(init=False)

    def __post_init__(self):
        self.agree = self.stable_height_closed == self.stable_height_chow


def w_coeff(N: int, delta: int) -> Fraction:
    """Contribution of one critical point of multiplicity delta; lies in (1/12)Z."""
    if N < 1 or delta < 1:
        raise ValueError("need N >= 1 and delta >= 1")
    return Fraction(
        (delta - 1) * ((N * delta + 1) * (delta - 1) ** (N - 1) + (-1) ** N * (delta + 1)),
        12 * delta**2,
    )


def abc_coeffs(N: int, d: int) -> tuple[Fraction, Fraction, Fraction]:
    """Integers (a, b, c) with [(1 - c1(L))^-1 c1(Omega) c(Omega)]_top = h^N(a h + b m + c e)."""
    a = Fraction(N + 1, d) * (-((d - 1) ** (N + 1)) + (-1) ** (N + 1))
    b = Fraction(N + 1, d * d) * (-((d - 1) ** N) * (d * N + 1) + (-1) ** N)
    c = Fraction(1, d) * (-((d - 1) ** N) * (d - N - 2) + (-1) ** (N + 1) * (N + 2))
    return a, b, c


def _bracket(N: int, r: int, delta: int) -> Fraction:
    # [(1+y)^N / (1 + delta y)]^{[r-2]}, zero when r < 2
    return ratio_coefficient(N, delta, r - 2)


def alpha_coeff(N: int, r: int, delta: int) -> Fraction:
    if r < 1:
        raise ValueError("r must be positive")
    return (-1) ** (r - 1) * ((delta - 1) * binomial(N, r - 1) - delta**2 * _bracket(N, r, delta))


def beta_coeff(N: int, r: int, delta: int) -> Fraction:
    if r < 1:
        raise ValueError("r must be positive")
    return (-1) ** r * (
        binomial(N, r) - delta * binomial(N, r - 1) + delta**2 * _bracket(N, r, delta)
    )


def blowup_tangent_shift(N: int, r: int) -> int:
    """(-1)^r [C(N, r) - C(N, r - 1)], the eta^r term of the blow-up tangent class."""
    return (-1) ** r * (binomial(N, r) - binomial(N, r - 1))


def eta_coefficient_identity(N: int, delta: int) -> tuple[Fraction, Fraction]:
    """(beta(N,1,d) beta(N,N-1,d), (1 - N/d)((d-1)^N + (-1)^(N+1))); the two agree."""
    if N < 2:
        raise ValueError("N must be at least 2")
    product = beta_coeff(N, 1, delta) * beta_coeff(N, N - 1, delta)
    closed = (1 - Fraction(N, delta)) * ((delta - 1) ** N + (-1) ** (N + 1))
    return product, closed


def u_coeff(N: int, delta: int) -> Fraction:
    return Fraction(
        (-1) ** N * (delta - 1) * ((N * delta - delta**2 + 1) * (delta - 1) ** (N - 1) + (-1) ** N * (delta + 1)),
        12 * delta**2,
    )


def u_coeff_expanded(N: int, delta: int) -> Fraction:
    """Unfactored form of u, the sum of the eta^N correction and the exceptional Euler term."""
    first = Fraction((-1) ** (N - 1), 12) * (1 - Fraction(N, delta)) * ((delta - 1) ** N + (-1) ** (N + 1))
    second = Fraction((-1) ** N, 12 * delta**2) * ((delta - 1) ** N + (-1) ** N * (N * delta - 1))
    return first + second


def v_coeff(N: int, delta: int) -> Fraction:
    return u_coeff(N, delta) + Fraction((-1) ** N * (delta - 1) ** N, 12)


def chi_hypersurface(n: int, delta: int) -> Fraction:
    """Euler characteristic of a smooth degree-delta hypersurface in P^n."""
    if n < 1 or delta < 1:
        raise ValueError("need n >= 1 and delta >= 1")
    return delta * ratio_coefficient(n + 1, delta, n - 1)


def chi_exceptional(N: int, delta: int) -> Fraction:
    """Euler characteristic of the codimension-two exceptional stratum over a point of multiplicity delta.

    This is a smooth degree-delta hypersurface of P^(N-1).
    """
    if N < 1 or delta < 1:
        raise ValueError("need N >= 1 and delta >= 1")
    return Fraction((-1) ** N, delta) * ((delta - 1) ** N + (-1) ** N * (N * delta - 1))


def chi_exceptional_via_series(N: int, delta: int) -> Fraction:
    """Same quantity via the second closed form of the coefficient identity at r = 2."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return delta * coeff_closed_second(N, 2, delta)


def alpha_x(data: StratificationData) -> Fraction:
    total = Fraction(data.N - 1, 4) * sum((m - 1) * chi for m, chi in data.components)
    for mi, mj, chi in data.pairs:
        total += Fraction(1, 12) * (3 - Fraction(mi, mj) - Fraction(mj, mi)) * chi
    return total


def chi_sum_semistable(N: int, deg_sigma: int, fibers: SingularFiberData) -> Fraction:
    """Euler characteristic of the exceptional strata after a base change of degree deg_sigma."""
    deltas = [delta for delta, _ in fibers]
    if deg_sigma < 1:
        raise ValueError("deg_sigma must be positive")
    if deltas and deg_sigma % lcm(*deltas):
        raise ValueError(f"deg_sigma={deg_sigma} is not divisible by lcm{tuple(deltas)}")
    s = sum(
        (count * Fraction((delta - 1) ** N + (-1) ** N * (N * delta - 1), delta**2) for delta, count in fibers),
        Fraction(0),
    )
    return (-1) ** N * deg_sigma * s


def chi_sum_semistable_per_point(N: int, deg_sigma: int, fibers: SingularFiberData) -> Fraction:
    """Each point of multiplicity delta has deg_sigma / delta preimages."""
    return sum(
        (count * Fraction(deg_sigma, delta) * chi_exceptional(N, delta) for delta, count in fibers),
        Fraction(0),
    )


def sigma_count_check(geom: PencilGeometry, fibers: SingularFiberData) -> tuple[int, Fraction, bool]:
    lhs = sum(count * (delta - 1) ** geom.N for delta, count in fibers)
    rhs = chow.sigma_pushforward_closed(geom)
    return lhs, rhs, lhs == rhs


def _w_sum(N: int, fibers: SingularFiberData) -> Fraction:
    return sum((count * w_coeff(N, delta) for delta, count in fibers), Fraction(0))


def stable_height_closed(geom: PencilGeometry, fibers: SingularFiberData) -> Fraction:
    return -(geom.N + 1) * w_coeff(geom.N, geom.d) * chow.ht_int(geom) + _w_sum(geom.N, fibers)


def stable_height_chow(geom: PencilGeometry, fibers: SingularFiberData, e_sign: int = -1) -> Fraction:
    """Stable height from Chow-ring integrals of P(E); the fibers of P(E) contribute no height."""
    quotient = chow.integrate(geom, chow.quotient_class_direct(geom, e_sign))
    c1cn = chow.integrate(geom, chow.c1L_cN_direct(geom, e_sign))
    return (quotient - c1cn) / 12 + _w_sum(geom.N, fibers)


def f_stab_derived(N: int, d: int) -> Fraction:
    """Height per unit ht_int when every critical point is an ordinary double point."""
    return (N + 1) * ((d - 1) ** N * w_coeff(N, 2) - w_coeff(N, d))


def height_report(geom: PencilGeometry, fibers: SingularFiberData) -> HeightReport:
    lhs, rhs, feasible = sigma_count_check(geom, fibers)
    return HeightReport(
        ht_int=chow.ht_int(geom),
        sigma_count_lhs=lhs,
        sigma_count_rhs=rhs,
        feasible=feasible,
        stable_height_closed=stable_height_closed(geom, fibers),
        stable_height_chow=stable_height_chow(geom, fibers),
    )
