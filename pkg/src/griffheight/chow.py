"""Chow ring of a projective bundle P(E) -> C over a curve.

E has rank N + 1. Writing h = c_1(O_E(1)), e = c_1(E) and m = c_1(M) for a
line bundle M on C, every class is a sum over codimension p of

    a_p h^p + b_p m h^(p-1) + c_p e h^(p-1),

with b_0 = c_0 = 0. Products of two base classes vanish (CH^2(C) = 0), and
the Grothendieck relation h^(N+1) + e h^N = 0 is applied eagerly, so a top
class (codimension N + 1) only has m- and e-parts. Pushing forward to a
point reads off those two parts against deg M and deg E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from griffheight.exact_arith import as_rational

@dataclass(frozen=True)
class PencilGeometry:
    """Numerical data of a pencil H in P(E) with O(H) = O_E(d) (x) pi^*M."""

    N: int
    d: int
    deg_e: int
    deg_m: int

    def __post_init__(self):
        for name in ("N", "d", "deg_e", "deg_m"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")

    @property
    def top(self) -> int:
        """Dimension of P(E), the codimension of a point."""
        return self.N + 1


def _norm(x):
    # integral coefficients are kept as ints: int arithmetic is much faster than Fraction
    if type(x) is int:
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _ring_key(geom: PencilGeometry) -> int:
    # the multiplication rules only depend on N; degrees matter for integrate
    return geom.N


class ChowClass:
    """Immutable element of CH^*(P(E)) in reduced form."""

    __slots__ = ("geom", "_terms")

    def __init__(self, geom: PencilGeometry, terms: Iterable[tuple] = ()):
        top = geom.top
        a = [0] * (top + 1)
        b = [0] * (top + 1)
        c = [0] * (top + 1)
        for p, (ap, bp, cp) in enumerate(terms):
            if p > top:
                continue
            ap, bp, cp = as_rational(ap), as_rational(bp), as_rational(cp)
            if p == 0 and (bp or cp):
                raise ValueError("base classes have codimension >= 1")
            a[p] += ap
            b[p] += bp
            c[p] += cp
        self._set(geom, a, b, c)

    def _set(self, geom, a, b, c):
        top = geom.top
        # h^(N+1) = -e h^N
        c[top] -= a[top]
        a[top] = 0
        self.geom = geom
        self._terms = tuple((_norm(x), _norm(y), _norm(z)) for x, y, z in zip(a, b, c))

    @classmethod
    def _from_lists(cls, geom, a, b, c) -> "ChowClass":
        obj = cls.__new__(cls)
        obj._set(geom, a, b, c)
        return obj

    @property
    def terms(self) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
        return tuple((Fraction(a), Fraction(b), Fraction(c)) for a, b, c in self._terms)

    def _check(self, other: "ChowClass"):
        if not isinstance(other, ChowClass):
            raise TypeError(f"expected ChowClass, got {type(other).__name__}")
        if _ring_key(self.geom) != _ring_key(other.geom):
            raise ValueError(f"geometry mismatch: N={self.geom.N} vs N={other.geom.N}")

    def __add__(self, other):
        if not isinstance(other, ChowClass):
            other = cc_scalar(self.geom, other)
        self._check(other)
        a, b, c = [], [], []
        for x, y in zip(self._terms, other._terms):
            a.append(x[0] + y[0])
            b.append(x[1] + y[1])
            c.append(x[2] + y[2])
        return ChowClass._from_lists(self.geom, a, b, c)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass._from_lists(
            self.geom, [-t[0] for t in self._terms], [-t[1] for t in self._terms], [-t[2] for t in self._terms]
        )

    def __sub__(self, other):
        if not isinstance(other, ChowClass):
            other = cc_scalar(self.geom, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ChowClass):
            q = _norm(as_rational(other))
            return ChowClass._from_lists(
                self.geom, [q * t[0] for t in self._terms], [q * t[1] for t in self._terms],
                [q * t[2] for t in self._terms],
            )
        self._check(other)
        top = self.geom.top
        a = [0] * (top + 1)
        b = [0] * (top + 1)
        c = [0] * (top + 1)
        for p, (ap, bp, cp) in enumerate(self._terms):
            if not (ap or bp or cp):
                continue
            for q, (aq, bq, cq) in enumerate(other._terms):
                if p + q > top:
                    break
                a[p + q] += ap * aq
                b[p + q] += ap * bq + bp * aq
                c[p + q] += ap * cq + cp * aq
        # h^(N+2) = -e h^(N+1) = 0, so everything past the top is dropped
        return ChowClass._from_lists(self.geom, a, b, c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return cc_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        return _ring_key(self.geom) == _ring_key(other.geom) and self._terms == other._terms

    def __hash__(self):
        return hash((_ring_key(self.geom), self._terms))

    def is_zero(self) -> bool:
        return not any(any(t) for t in self._terms)

    def __repr__(self):
        parts = []
        for p, (a, b, c) in enumerate(self._terms):
            if a:
                parts.append(f"{a}*h^{p}" if p else f"{a}")
            if b:
                parts.append(f"{b}*m*h^{p - 1}")
            if c:
                parts.append(f"{c}*e*h^{p - 1}")
        return f"ChowClass(N={self.geom.N}: {' + '.join(parts) or '0'})"


def cc_scalar(geom: PencilGeometry, q) -> ChowClass:
    return ChowClass(geom, [(q, 0, 0)])


def cc_h(geom: PencilGeometry) -> ChowClass:
    return ChowClass(geom, [(0, 0, 0), (1, 0, 0)])


def cc_m(geom: PencilGeometry) -> ChowClass:
    return ChowClass(geom, [(0, 0, 0), (0, 1, 0)])


def cc_e(geom: PencilGeometry) -> ChowClass:
    return ChowClass(geom, [(0, 0, 0), (0, 0, 1)])


def cc_add(x: ChowClass, y: ChowClass) -> ChowClass:
    return x + y


def cc_mul(x: ChowClass, y: ChowClass) -> ChowClass:
    return x * y


def cc_pow(x: ChowClass, k: int) -> ChowClass:
    if k < 0:
        raise ValueError("negative powers: use cc_inverse_unit")
    result = cc_scalar(x.geom, 1)
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def cc_inverse_unit(x: ChowClass) -> ChowClass:
    """Inverse of a class with nonzero degree-0 part.

    x = u (1 - n) with n nilpotent of order <= N + 2, so the geometric series
    in n stops after N + 1 terms.
    """
    u = x._terms[0][0]
    if u == 0:
        raise ZeroDivisionError("class with zero constant part is not a unit")
    inv_u = 1 / Fraction(u)
    nil = cc_scalar(x.geom, 1) - x * inv_u
    total = cc_scalar(x.geom, 1)
    power = cc_scalar(x.geom, 1)
    for _ in range(x.geom.top):
        power = power * nil
        total = total + power
    return total * inv_u


def component(x: ChowClass, p: int) -> ChowClass:
    if not 0 <= p <= x.geom.top:
        raise ValueError(f"codimension {p} outside 0..{x.geom.top}")
    zeros = [0] * (x.geom.top + 1)
    a, b, c = list(zeros), list(zeros), list(zeros)
    a[p], b[p], c[p] = x._terms[p]
    return ChowClass._from_lists(x.geom, a, b, c)


def integrate(geom: PencilGeometry, x: ChowClass) -> Fraction:
    """Degree of the codimension-(N+1) part of x."""
    _, b, c = x._terms[geom.top]
    return Fraction(b * geom.deg_m + c * geom.deg_e)


def c1_L(geom: PencilGeometry) -> ChowClass:
    return geom.d * cc_h(geom) + cc_m(geom)


def chern_omega(geom: PencilGeometry, e_sign: int = -1) -> ChowClass:
    """Total Chern class of the relative cotangent bundle of P(E)/C.

    From the relative Euler sequence, c = (1 - h)^(N+1) + e_sign * e (1 - h)^N.
    Only ``e_sign = -1`` is compatible with h^(N+1) = -e h^N; the other sign
    is kept so that tests can show it fails.
    """
    if e_sign not in (1, -1):
        raise ValueError("e_sign must be +1 or -1")
    one_minus_h = cc_scalar(geom, 1) - cc_h(geom)
    return cc_pow(one_minus_h, geom.N + 1) + e_sign * cc_e(geom) * cc_pow(one_minus_h, geom.N)


def chern_omega_k(geom: PencilGeometry, k: int, e_sign: int = -1) -> ChowClass:
    return component(chern_omega(geom, e_sign), k)


def sigma_cycle_via_chern(geom: PencilGeometry, e_sign: int = -1) -> ChowClass:
    """sum_{k=0}^{N} c_1(L)^(N+1-k) c_k(Omega)."""
    L = c1_L(geom)
    c = chern_omega(geom, e_sign)
    total = cc_scalar(geom, 0)
    for k in range(geom.N + 1):
        total = total + cc_pow(L, geom.N + 1 - k) * component(c, k)
    return total


def sigma_cycle_via_inverse(geom: PencilGeometry, e_sign: int = -1) -> ChowClass:
    """Top component of (1 - c_1(L))^-1 c(Omega)."""
    inv = cc_inverse_unit(cc_scalar(geom, 1) - c1_L(geom))
    return component(inv * chern_omega(geom, e_sign), geom.top)


def sigma_cycle_closed(geom: PencilGeometry) -> ChowClass:
    """(d-1)^N h^N [(d-1) h + (N+1) m - e]."""
    N, d = geom.N, geom.d
    h, m, e = cc_h(geom), cc_m(geom), cc_e(geom)
    return (d - 1) ** N * cc_pow(h, N) * ((d - 1) * h + (N + 1) * m - e)


def c1L_cN_direct(geom: PencilGeometry, e_sign: int = -1) -> ChowClass:
    return c1_L(geom) * chern_omega_k(geom, geom.N, e_sign)


def c1L_cN_closed(geom: PencilGeometry) -> ChowClass:
    """(-1)^N h^N [d(N+1) h + (N+1) m + dN e]."""
    N, d = geom.N, geom.d
    h, m, e = cc_h(geom), cc_m(geom), cc_e(geom)
    return (-1) ** N * cc_pow(h, N) * (d * (N + 1) * h + (N + 1) * m + d * N * e)


def quotient_class_direct(geom: PencilGeometry, e_sign: int = -1) -> ChowClass:
    """Top component of (1 - c_1(L))^-1 c_1(Omega) c(Omega)."""
    c = chern_omega(geom, e_sign)
    inv = cc_inverse_unit(cc_scalar(geom, 1) - c1_L(geom))
    return component(inv * component(c, 1) * c, geom.top)


def quotient_class_closed(geom: PencilGeometry) -> ChowClass:
    """h^N (a h + b m + c e) with the integer coefficients of abc_coeffs."""
    from griffheight.heights import abc_coeffs

    a, b, c = abc_coeffs(geom.N, geom.d)
    h, m, e = cc_h(geom), cc_m(geom), cc_e(geom)
    return cc_pow(h, geom.N) * (a * h + b * m + c * e)


def ht_int(geom: PencilGeometry) -> Fraction:
    """Intersection-theoretic height deg M - d deg E / (N + 1)."""
    return geom.deg_m - Fraction(geom.d * geom.deg_e, geom.N + 1)


# pushforward closed forms, each a multiple of ht_int


def sigma_pushforward_closed(geom: PencilGeometry) -> Fraction:
    return (geom.N + 1) * (geom.d - 1) ** geom.N * ht_int(geom)


def c1L_cN_pushforward_closed(geom: PencilGeometry) -> Fraction:
    return (-1) ** geom.N * (geom.N + 1) * ht_int(geom)


def quotient_pushforward_closed(geom: PencilGeometry) -> Fraction:
    N, d = geom.N, geom.d
    return Fraction(N + 1, d * d) * (-(N * d + 1) * (d - 1) ** N + (-1) ** N) * ht_int(geom)

