"""Milnor numbers of homogeneous isolated singularities.

For a form F of degree delta in N variables the Milnor algebra
Q[x_1..x_N] / (dF/dx_1, ..., dF/dx_N) is graded. Its Hilbert function is
computed degree by degree as (number of monomials) - rank of the Jacobian
ideal's degree-k part. If the singularity at the origin is isolated (which
for a form means the projective hypersurface F = 0 is smooth) the algebra
vanishes above degree N(delta - 2), and the Milnor number is the total
dimension, (delta - 1)^N.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from griffheight.exact_arith import as_rational, binomial

Exponent = tuple[int, ...]


class NonIsolatedSingularity(ValueError):
    """The Jacobian quotient does not vanish past the socle degree."""

    def __init__(self, dims):
        self.dims = dims
        super().__init__(
            "non-isolated singularity; projective cone singular "
            f"(quotient dimension {dims.dims[-1]} in degree {len(dims.dims) - 1})"
        )


@dataclass(frozen=True)
class HomogeneousPoly:
    num_vars: int
    degree: int
    terms: Mapping[Exponent, Fraction]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        clean = {}
        for exps, coeff in dict(self.terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {self.num_vars} variables")
            if sum(exps) != self.degree:
                raise ValueError(f"term {exps} has degree {sum(exps)}, expected {self.degree}: not homogeneous")
            coeff = as_rational(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "HomogeneousPoly":
        """Build from ``[{"exponents": [...], "coeff": "p/q"}, ...]``; degree is inferred."""
        records = list(records)
        if not records:
            raise ValueError("empty polynomial")
        exps = [tuple(r["exponents"]) for r in records]
        n = len(exps[0])
        degree = sum(exps[0])
        return cls(n, degree, {e: as_rational(r["coeff"]) for e, r in zip(exps, records)})

    def to_records(self) -> list[dict]:
        from griffheight.exact_arith import format_rational

        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in sorted(self.terms.items())]

    def scale(self, q) -> "HomogeneousPoly":
        q = as_rational(q)
        return HomogeneousPoly(self.num_vars, self.degree, {e: q * c for e, c in self.terms.items()})

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if (self.num_vars, self.degree) != (other.num_vars, other.degree):
            raise ValueError("can only add forms of the same degree in the same variables")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomogeneousPoly(self.num_vars, self.degree, out)

    def derivative(self, i: int) -> "HomogeneousPoly | None":
        """d/dx_i, or None for degree-1 forms whose derivative is a constant."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        if self.degree == 1:
            return None
        return HomogeneousPoly(self.num_vars, self.degree - 1, out)

    def __str__(self):
        if not self.terms:
            return "0"
        names = _var_names(self.num_vars)
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k)
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)


def _var_names(n: int) -> list[str]:
    return list("xyzw") if n == 4 else (list("xyz")[:n] if n <= 3 else [f"x{i + 1}" for i in range(n)])


@dataclass(frozen=True)
class GradedQuotientDims:
    dims: tuple[int, ...]
    socle_bound: int

    @property
    def isolated(self) -> bool:
        return self.dims[self.socle_bound + 1] == 0

    def is_symmetric(self) -> bool:
        s = self.socle_bound
        return all(self.dims[k] == self.dims[s - k] for k in range(s + 1))


def monomials(num_vars: int, degree: int) -> list[Exponent]:
    """Exponent vectors of total degree ``degree``, in a fixed order."""
    if degree < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def fermat(N: int, delta: int) -> HomogeneousPoly:
    terms = {}
    for i in range(N):
        e = [0] * N
        e[i] = delta
        terms[tuple(e)] = Fraction(1)
    return HomogeneousPoly(N, delta, terms)


def jacobian_generators(F: HomogeneousPoly) -> list[HomogeneousPoly]:
    if F.degree < 2:
        raise ValueError("partials of a linear form are constants; need degree >= 2")
    return [F.derivative(i) for i in range(F.num_vars)]


def _integer_row(coeffs: list[Fraction]) -> list[int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [int(c * den) for c in coeffs]


def rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            a = m[i][col]
            row_i, row_r = m[i], m[r]
            m[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def degree_rank(generators: list[HomogeneousPoly], k: int) -> int:
    """Dimension of the degree-k part of the ideal spanned by the generators."""
    if not generators:
        return 0
    n = generators[0].num_vars
    g_deg = generators[0].degree
    shift = k - g_deg
    if shift < 0:
        return 0
    basis = monomials(n, k)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in generators:
        if not g.terms:
            continue
        for mono in monomials(n, shift):
            row = [Fraction(0)] * len(basis)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, mono))]] = c
            rows.append(_integer_row(row))
    return rank(rows)


def hilbert_dims(F: HomogeneousPoly) -> GradedQuotientDims:
    N = F.num_vars
    socle = N * (F.degree - 2)
    gens = jacobian_generators(F)
    dims = tuple(binomial(k + N - 1, N - 1) - degree_rank(gens, k) for k in range(socle + 2))
    return GradedQuotientDims(dims, socle)


def milnor_number(F: HomogeneousPoly) -> int:
    """Milnor number of the cone singularity of F at the origin.

    Raises :class:`NonIsolatedSingularity` when F = 0 is singular as a
    projective hypersurface.
    """
    hd = hilbert_dims(F)
    if not hd.isolated:
        raise NonIsolatedSingularity(hd)
    return sum(hd.dims[: hd.socle_bound + 1])


def is_smooth_cone(F: HomogeneousPoly) -> bool:
    try:
        milnor_number(F)
    except NonIsolatedSingularity:
        return False
    return True
