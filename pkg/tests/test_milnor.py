import itertools
import random
from fractions import Fraction

import pytest
import sympy

from griffheight.milnor import (
    HomogeneousPoly,
    NonIsolatedSingularity,
    fermat,
    hilbert_dims,
    is_smooth_cone,
    jacobian_generators,
    milnor_number,
    monomials,
    rank,
)

X2Y = HomogeneousPoly(2, 3, {(2, 1): 1})


def test_fermat_examples():
    assert fermat(2, 3).terms == {(3, 0): 1, (0, 3): 1}
    assert fermat(1, 4).terms == {(4,): 1}
    assert fermat(3, 2).terms == {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}


def test_poly_validation():
    with pytest.raises(ValueError, match="not homogeneous"):
        HomogeneousPoly(2, 3, {(2, 0): 1})
    with pytest.raises(ValueError):
        HomogeneousPoly(2, 2, {(2,): 1})
    assert HomogeneousPoly(2, 2, {(2, 0): 0, (1, 1): 3}).terms == {(1, 1): 3}


def test_from_records_round_trip():
    F = HomogeneousPoly.from_records([{"exponents": [2, 1], "coeff": "3/4"}, {"exponents": [0, 3], "coeff": "-1"}])
    assert F.degree == 3 and F.terms[(2, 1)] == Fraction(3, 4)
    assert HomogeneousPoly.from_records(F.to_records()) == F


def test_jacobian_generators():
    gx, gy = jacobian_generators(fermat(2, 3))
    assert gx.terms == {(2, 0): 3} and gy.terms == {(0, 2): 3}
    gx, gy = jacobian_generators(X2Y)
    assert gx.terms == {(1, 1): 2} and gy.terms == {(2, 0): 1}
    assert all(g.degree == 2 for g in jacobian_generators(fermat(4, 3)))
    # zero partials are allowed
    gx, gy = jacobian_generators(HomogeneousPoly(2, 3, {(3, 0): 1}))
    assert gy.terms == {}


def _fermat_dims_oracle(N, delta, top):
    """Quotient by (x_i^(delta-1)): monomials with every exponent <= delta - 2, counted by degree."""
    counts = [0] * (top + 1)
    for e in itertools.product(range(delta - 1), repeat=N):
        if sum(e) <= top:
            counts[sum(e)] += 1
    return counts


@pytest.mark.parametrize("N,delta", [(N, d) for N in range(1, 4) for d in range(2, 6)] + [(4, 2), (4, 3)])
def test_fermat_dims_and_milnor(N, delta):
    hd = hilbert_dims(fermat(N, delta))
    assert list(hd.dims) == _fermat_dims_oracle(N, delta, hd.socle_bound + 1)
    assert milnor_number(fermat(N, delta)) == (delta - 1) ** N
    assert hd.is_symmetric()


def test_small_examples():
    assert hilbert_dims(fermat(2, 3)).dims == (1, 2, 1, 0)
    assert hilbert_dims(fermat(1, 5)).dims == (1, 1, 1, 1, 0)
    assert milnor_number(fermat(3, 2)) == 1
    assert milnor_number(fermat(1, 5)) == 4


def test_x2y_is_non_isolated():
    hd = hilbert_dims(X2Y)
    assert all(k > 0 for k in hd.dims)
    with pytest.raises(NonIsolatedSingularity):
        milnor_number(X2Y)
    assert not is_smooth_cone(X2Y)


def test_xy_is_a_node():
    xy = HomogeneousPoly(2, 2, {(1, 1): 1})
    assert is_smooth_cone(xy) and milnor_number(xy) == 1


def test_fermat_cones_smooth():
    for N in range(1, 5):
        for delta in range(2, 6):
            if N == 4 and delta > 4:
                continue
            assert is_smooth_cone(fermat(N, delta))


def test_scaling_invariance():
    for F in (fermat(2, 4), HomogeneousPoly(3, 2, {(1, 1, 0): 1, (0, 0, 2): 5})):
        for lam in (Fraction(-3), Fraction(2, 7)):
            assert milnor_number(F.scale(lam)) == milnor_number(F)


def _perturbation(rng, N, delta):
    terms = {m: Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for m in rng.sample(monomials(N, delta), 3)}
    return fermat(N, delta) + HomogeneousPoly(N, delta, terms)


def test_random_smooth_perturbations_preserve_mu():
    rng = random.Random(2024)
    seen = 0
    while seen < 20:
        N, delta = rng.choice([(2, 3), (2, 4), (3, 2), (3, 3), (2, 5), (3, 4)])
        F = _perturbation(rng, N, delta)
        if not is_smooth_cone(F):
            continue
        hd = hilbert_dims(F)
        assert milnor_number(F) == (delta - 1) ** N
        assert hd.is_symmetric()
        seen += 1


def test_singular_cone_detected():
    # (x + y)^2 z has a double line
    F = HomogeneousPoly(3, 3, {(2, 0, 1): 1, (1, 1, 1): 2, (0, 2, 1): 1})
    assert not is_smooth_cone(F)
    # nodal cubic curve y^2 z - x^3 - x^2 z
    F = HomogeneousPoly(3, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1})
    assert not is_smooth_cone(F)


def test_rank_against_sympy():
    rng = random.Random(7)
    for _ in range(200):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        M = [[rng.choice([0, 0, 1, -1, 2, 7]) for _ in range(cols)] for _ in range(rows)]
        assert rank(M) == sympy.Matrix(M).rank()
    assert rank([]) == 0
    assert rank([[0, 0]]) == 0


def test_monomials_count():
    from griffheight.exact_arith import binomial

    for n in range(1, 5):
        for k in range(6):
            assert len(monomials(n, k)) == binomial(k + n - 1, n - 1)
    assert monomials(2, -1) == []
