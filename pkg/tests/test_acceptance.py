"""Acceptance gate: every criterion is an exact identity (tolerance zero).

Run ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``
for one PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

from griffheight import chow, heights, milnor, series
from griffheight.chow import PencilGeometry
from griffheight.cli import main
from griffheight.exact_arith import binomial
from griffheight.heights import StratificationData
from griffheight.sweeps import feasible_scenarios

RESULTS: list[str] = []

CHOW_NS = range(1, 7)
CHOW_DS = range(2, 8)
CHOW_DEGS = range(-3, 4)


def _report(label: str, ok: bool, elapsed: float, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {label} ({elapsed:.2f}s){' - ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)


def _chow_sweep():
    for N in CHOW_NS:
        for d in CHOW_DS:
            for de in CHOW_DEGS:
                for dm in CHOW_DEGS:
                    yield PencilGeometry(N, d, de, dm)


def test_c01_coefficient_identity():
    start = time.perf_counter()
    bad = []
    for n in range(13):
        for r in range(n + 1):
            for a in range(-3, 8):
                if a == 0:
                    continue
                vals = (series.coeff_bruteforce(n, r, a), series.coeff_closed_first(n, r, a),
                        series.coeff_closed_second(n, r, a))
                if len(set(vals)) != 1:
                    bad.append((n, r, a, vals))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    _report("C1 coefficient: brute force = both closed forms", ok, elapsed, str(bad[:1]) if bad else "")
    assert not bad
    assert elapsed < 1.0


def test_c02_sigma_cycle_three_way():
    start = time.perf_counter()
    bad = []
    for g in _chow_sweep():
        a = chow.sigma_cycle_via_inverse(g)
        b = chow.sigma_cycle_via_chern(g)
        c = chow.sigma_cycle_closed(g)
        if not a == b == c:
            bad.append((g, a, b, c))
    elapsed = time.perf_counter() - start
    _report("C2 sigma cycle: inverse series = Chern sum = closed form", not bad and elapsed < 10, elapsed,
            repr(bad[0]) if bad else "")
    assert not bad
    assert elapsed < 10.0


def test_c03_remaining_class_identities_and_sign():
    start = time.perf_counter()
    bad = []
    for g in _chow_sweep():
        a, b, c = heights.abc_coeffs(g.N, g.d)
        if any(x.denominator != 1 for x in (a, b, c)):
            bad.append(("abc not integral", g))
        if chow.c1L_cN_direct(g) != chow.c1L_cN_closed(g):
            bad.append(("c1 cN", g))
        if chow.quotient_class_direct(g) != chow.quotient_class_closed(g):
            bad.append(("quotient", g))
    wrong_sign_failures = 0
    for g in _chow_sweep():
        if g.deg_e or g.deg_m:
            continue
        wrong_sign_failures += (
            chow.c1L_cN_direct(g, e_sign=1) != chow.c1L_cN_closed(g)
            or chow.quotient_class_direct(g, e_sign=1) != chow.quotient_class_closed(g)
        )
    elapsed = time.perf_counter() - start
    ok = not bad and wrong_sign_failures > 0
    _report("C3 c1(L)c_N and quotient class closed forms; only one Euler sign passes", ok, elapsed,
            f"wrong sign fails at {wrong_sign_failures} (N, d) points")
    assert not bad
    assert wrong_sign_failures > 0


def test_c04_pushforwards():
    start = time.perf_counter()
    bad = []
    for g in _chow_sweep():
        ht = chow.ht_int(g)
        N, d = g.N, g.d
        pairs = [
            (chow.integrate(g, chow.sigma_cycle_via_chern(g)), (N + 1) * (d - 1) ** N * ht),
            (chow.integrate(g, chow.c1L_cN_direct(g)), (-1) ** N * (N + 1) * ht),
            (chow.integrate(g, chow.quotient_class_direct(g)),
             Fraction(N + 1, d * d) * (-(N * d + 1) * (d - 1) ** N + (-1) ** N) * ht),
        ]
        for lhs, rhs in pairs:
            if lhs != rhs:
                bad.append((g, lhs, rhs))
    elapsed = time.perf_counter() - start
    _report("C4 pushforward integrals", not bad, elapsed, repr(bad[0]) if bad else "")
    assert not bad


def test_c05_closed_and_chow_heights_agree():
    start = time.perf_counter()
    checked = 0
    bad = []
    for N in range(1, 6):
        for g, fibers in feasible_scenarios([N], 6, 4, cap=2000):
            lhs, rhs, feasible = heights.sigma_count_check(g, fibers)
            assert feasible, (g, fibers)
            if any(delta > 6 for delta, _ in fibers):
                bad.append(("delta out of range", g, fibers))
            closed = heights.stable_height_closed(g, fibers)
            via_chow = heights.stable_height_chow(g, fibers)
            if closed != via_chow:
                bad.append((g, fibers, closed, via_chow))
            checked += 1
    elapsed = time.perf_counter() - start
    ok = not bad and 0 < checked <= 10_000 and elapsed < 60
    _report("C5 stable height by closed formula = Chow-ring route", ok, elapsed, f"{checked} feasible scenarios")
    assert not bad
    assert 0 < checked <= 10_000
    assert elapsed < 60.0


def test_c06_coefficient_bookkeeping():
    start = time.perf_counter()
    bad = []
    for N in range(1, 11):
        for delta in range(1, 11):
            if (12 * heights.w_coeff(N, delta)).denominator != 1:
                bad.append(("12w", N, delta))
    for N in range(1, 9):
        for delta in range(2, 9):
            if heights.v_coeff(N, delta) != (-1) ** N * heights.w_coeff(N, delta):
                bad.append(("v", N, delta))
            for r in range(1, N + 1):
                diff = heights.beta_coeff(N, r, delta) - heights.alpha_coeff(N, r, delta)
                if diff != (-1) ** r * (binomial(N, r) - binomial(N, r - 1)):
                    bad.append(("beta-alpha", N, r, delta))
            if N >= 2:
                lhs, rhs = heights.eta_coefficient_identity(N, delta)
                if lhs != rhs:
                    bad.append(("eta", N, delta, lhs, rhs))
    elapsed = time.perf_counter() - start
    _report("C6 w in (1/12)Z, v = (-1)^N w, beta - alpha, eta^N coefficient", not bad, elapsed,
            repr(bad[0]) if bad else "")
    assert not bad


def test_c07_euler_characteristics():
    start = time.perf_counter()
    bad = [
        (N, delta)
        for N in range(2, 9)
        for delta in range(1, 9)
        if heights.chi_exceptional(N, delta) != heights.chi_hypersurface(N - 1, delta)
    ]
    spots = (heights.chi_exceptional(3, 2), heights.chi_exceptional(3, 3), heights.chi_hypersurface(3, 2))
    elapsed = time.perf_counter() - start
    ok = not bad and spots == (2, 0, 4)
    _report("C7 exceptional stratum chi = hypersurface chi; spot values 2, 0, 4", ok, elapsed,
            ", ".join(map(str, spots)))
    assert not bad
    assert spots == (2, 0, 4)


def test_c08_milnor_oracle():
    start = time.perf_counter()
    cases = [(N, d) for N in range(1, 4) for d in range(2, 6)] + [(4, 2), (4, 3)]
    bad = []
    for N, delta in cases:
        F = milnor.fermat(N, delta)
        hd = milnor.hilbert_dims(F)
        if milnor.milnor_number(F) != (delta - 1) ** N or not hd.is_symmetric():
            bad.append((N, delta, hd.dims))
    fermat_time = time.perf_counter() - start

    rng = random.Random(8)
    perturbed = 0
    while perturbed < 20:
        N, delta = rng.choice([(2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
        extra = {m: Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for m in rng.sample(milnor.monomials(N, delta), 3)}
        F = milnor.fermat(N, delta) + milnor.HomogeneousPoly(N, delta, extra)
        if not milnor.is_smooth_cone(F):
            continue
        hd = milnor.hilbert_dims(F)
        if milnor.milnor_number(F) != (delta - 1) ** N or not hd.is_symmetric():
            bad.append(("perturbed", F.terms))
        perturbed += 1
    x2y = milnor.HomogeneousPoly(2, 3, {(2, 1): 1})
    rejected = not milnor.is_smooth_cone(x2y)
    elapsed = time.perf_counter() - start
    ok = not bad and rejected and fermat_time < 30
    _report("C8 Milnor oracle: Fermat, 20 perturbations, x^2 y rejected, symmetry", ok, elapsed,
            f"Fermat cases {fermat_time:.2f}s")
    assert not bad
    assert rejected
    assert fermat_time < 30.0


def test_c09_alpha_x():
    start = time.perf_counter()
    rng = random.Random(9)
    bad = []
    for _ in range(200):
        comps = tuple((1, rng.randint(-30, 30)) for _ in range(rng.randint(0, 6)))
        pairs = tuple((1, 1, rng.randint(-30, 30)) for _ in range(rng.randint(0, 6)))
        data = StratificationData(rng.randint(1, 8), comps, pairs)
        if heights.alpha_x(data) != Fraction(sum(p[2] for p in pairs), 12):
            bad.append(data)
    mixed = heights.alpha_x(StratificationData(2, ((2, 3),), ((2, 1, 2),)))
    elapsed = time.perf_counter() - start
    ok = not bad and mixed == Fraction(5, 6)
    _report("C9 alpha_x: unit multiplicities give chi(D^2 minus D^3)/12; mixed example 5/6", ok, elapsed,
            f"mixed = {mixed}")
    assert not bad
    assert mixed == Fraction(5, 6)


def test_c10_cli_worked_scenario(tmp_path, capsys):
    import json

    path = tmp_path / "worked.json"
    path.write_text(json.dumps({"N": 2, "d": 3, "deg_E": 1, "deg_M": 2,
                                "fibers": [{"delta": 2, "count": 8}, {"delta": 3, "count": 1}]}))
    start = time.perf_counter()
    code = main(["--json", "height", str(path)])
    rep = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    v = rep["values"]
    ok = (code == 0 and v["ht_int"] == "1/1" and v["feasible"] is True
          and v["stable_height_closed"] == v["stable_height_chow"] == "2/3")
    with capsys.disabled():
        _report("C10 CLI worked scenario: ht_int 1, feasible, height 2/3 by both routes, exit 0", ok, elapsed)
    assert ok


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
