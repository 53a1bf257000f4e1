"""Identity sweeps shared by ``griff verify`` and the test-suite.

Each sweep yields :class:`Outcome` records, one per identity family, holding
the number of points checked and the first counterexample if any.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from griffheight import chow, heights, milnor, series
from griffheight.chow import PencilGeometry
from griffheight.exact_arith import format_rational
from griffheight.heights import SingularFiberData

SCENARIO_CAP = 10_000
PER_GEOMETRY_CAP = 8
MAX_FIBER_DELTA = 6


@dataclass
class Outcome:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, **witness):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = {k: _jsonable(v) for k, v in witness.items()}

    def merge(self, other: "Outcome") -> "Outcome":
        self.checked += other.checked
        self.failures += other.failures
        if self.counterexample is None:
            self.counterexample = other.counterexample
        return self


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, chow.ChowClass):
        return repr(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class SweepBounds:
    max_n: int = 6
    max_d: int = 7
    deg_range: int = 3
    e_sign: int = -1
    series_max_n: int = 12
    coeff_max_n: int = 8
    coeff_max_delta: int = 8
    scenario_max_n: int = 5
    scenario_max_d: int = 6
    scenario_deg_range: int = 4
    milnor_max_n: int = 3
    milnor_max_delta: int = 5

    @classmethod
    def from_cli(cls, max_n: int, max_d: int, deg_range: int, e_sign: int = -1) -> "SweepBounds":
        """All sweeps share the same (N, d, degree) box."""
        return cls(
            max_n=max_n,
            max_d=max_d,
            deg_range=deg_range,
            e_sign=e_sign,
            scenario_max_n=max_n,
            scenario_max_d=max_d,
            scenario_deg_range=deg_range,
            coeff_max_n=max(2, max_n),
            coeff_max_delta=max(2, max_d),
            milnor_max_n=min(3, max_n),
            milnor_max_delta=max(2, min(5, max_d)),
        )


def geometries(ns, max_d: int, deg_range: int) -> Iterator[PencilGeometry]:
    for N in ns:
        for d in range(2, max_d + 1):
            for de in range(-deg_range, deg_range + 1):
                for dm in range(-deg_range, deg_range + 1):
                    yield PencilGeometry(N, d, de, dm)


# -- coefficient identity ---------------------------------------------------


def series_identity(max_n: int = 12, a_values=tuple(a for a in range(-3, 8) if a)) -> Outcome:
    out = Outcome("coefficient closed forms")
    for n in range(max_n + 1):
        for r in range(n + 1):
            for a in a_values:
                brute = series.coeff_bruteforce(n, r, a)
                first = series.coeff_closed_first(n, r, a)
                second = series.coeff_closed_second(n, r, a)
                out.record(brute == first == second, n=n, r=r, a=a, brute=brute, first=first, second=second)
    return out


# -- Chow ring ------------------------------------------------------------------


def chow_identities_for_n(N: int, max_d: int, deg_range: int, e_sign: int = -1) -> list[Outcome]:
    sigma = Outcome("sigma cycle: inverse series = Chern sum = closed form")
    c1cn = Outcome("c1(L) c_N(Omega): direct = closed form")
    quot = Outcome("quotient class: direct = h^N(a h + b m + c e)")
    abc = Outcome("a, b, c are integers")
    push_sigma = Outcome("pushforward of sigma cycle")
    push_c1cn = Outcome("pushforward of c1(L) c_N(Omega)")
    push_quot = Outcome("pushforward of quotient class")
    for d in range(2, max_d + 1):
        a, b, c = heights.abc_coeffs(N, d)
        abc.record(all(x.denominator == 1 for x in (a, b, c)), N=N, d=d, abc=(a, b, c))
        for de in range(-deg_range, deg_range + 1):
            for dm in range(-deg_range, deg_range + 1):
                g = PencilGeometry(N, d, de, dm)
                where = dict(N=N, d=d, deg_e=de, deg_m=dm)
                s_inv = chow.sigma_cycle_via_inverse(g, e_sign)
                s_sum = chow.sigma_cycle_via_chern(g, e_sign)
                s_cl = chow.sigma_cycle_closed(g)
                sigma.record(s_inv == s_sum == s_cl, **where, via_inverse=s_inv, via_sum=s_sum, closed=s_cl)
                x, y = chow.c1L_cN_direct(g, e_sign), chow.c1L_cN_closed(g)
                c1cn.record(x == y, **where, lhs=x, rhs=y)
                q, qc = chow.quotient_class_direct(g, e_sign), chow.quotient_class_closed(g)
                quot.record(q == qc, **where, lhs=q, rhs=qc)
                lhs, rhs = chow.integrate(g, s_sum), chow.sigma_pushforward_closed(g)
                push_sigma.record(lhs == rhs, **where, lhs=lhs, rhs=rhs)
                lhs, rhs = chow.integrate(g, x), chow.c1L_cN_pushforward_closed(g)
                push_c1cn.record(lhs == rhs, **where, lhs=lhs, rhs=rhs)
                lhs, rhs = chow.integrate(g, q), chow.quotient_pushforward_closed(g)
                push_quot.record(lhs == rhs, **where, lhs=lhs, rhs=rhs)
    return [sigma, c1cn, quot, abc, push_sigma, push_c1cn, push_quot]


# -- heights ----------------------------------------------------------------


def fiber_multisets(target: int, N: int, max_delta: int = MAX_FIBER_DELTA, limit: int | None = None):
    """Multisets {delta: count} with sum count (delta - 1)^N == target, largest deltas first."""
    deltas = list(range(max_delta, 1, -1))
    produced = 0

    def rec(i: int, remaining: int, acc: list[tuple[int, int]]):
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if remaining == 0:
            produced += 1
            yield SingularFiberData(tuple(acc))
            return
        if i == len(deltas):
            return
        delta = deltas[i]
        w = (delta - 1) ** N
        for count in range(remaining // w, -1, -1):
            yield from rec(i + 1, remaining - count * w, acc + ([(delta, count)] if count else []))
            if limit is not None and produced >= limit:
                return

    if target >= 0:
        yield from rec(0, target, [])


def feasible_scenarios(ns, max_d: int, deg_range: int, cap: int = SCENARIO_CAP,
                       per_geometry: int = PER_GEOMETRY_CAP):
    """(geometry, fibers) pairs obeying the critical-point count, in sweep order."""
    total = 0
    for g in geometries(ns, max_d, deg_range):
        target = chow.sigma_pushforward_closed(g)
        if target < 0:
            continue
        for fibers in fiber_multisets(int(target), g.N, limit=per_geometry):
            yield g, fibers
            total += 1
            if total >= cap:
                return


def height_routes_for_n(N: int, max_d: int, deg_range: int, e_sign: int = -1,
                        cap: int = SCENARIO_CAP) -> list[Outcome]:
    agree = Outcome("stable height: closed formula = Chow-ring route")
    feas = Outcome("enumerated scenarios satisfy the critical-point count")
    nodes = Outcome("all-nodes scenarios: height = f_stab * ht_int")
    chow_part: dict[PencilGeometry, Fraction] = {}
    for g, fibers in feasible_scenarios([N], max_d, deg_range, cap):
        lhs, rhs, ok = heights.sigma_count_check(g, fibers)
        feas.record(ok, N=g.N, d=g.d, deg_e=g.deg_e, deg_m=g.deg_m, fibers=fibers.entries, lhs=lhs, rhs=rhs)
        if g not in chow_part:
            chow_part[g] = heights.stable_height_chow(g, SingularFiberData(), e_sign)
        h11 = heights.stable_height_closed(g, fibers)
        h12 = chow_part[g] + heights._w_sum(g.N, fibers)
        agree.record(h11 == h12, N=g.N, d=g.d, deg_e=g.deg_e, deg_m=g.deg_m,
                     fibers=fibers.entries, closed=h11, chow=h12)
        if all(delta == 2 for delta, _ in fibers):
            fs = heights.f_stab_derived(g.N, g.d) * chow.ht_int(g)
            nodes.record(h11 == fs, N=g.N, d=g.d, deg_e=g.deg_e, deg_m=g.deg_m, lhs=h11, rhs=fs)
    return [agree, feas, nodes]


def coefficient_bookkeeping(max_n: int = 8, max_delta: int = 8) -> list[Outcome]:
    w12 = Outcome("12 w(N, delta) is an integer")
    vw = Outcome("v(N, delta) = (-1)^N w(N, delta)")
    uu = Outcome("u factored = u expanded")
    ba = Outcome("beta - alpha = (-1)^r [C(N,r) - C(N,r-1)]")
    ab_int = Outcome("alpha and beta are integers")
    eta = Outcome("beta(N,1) beta(N,N-1) = (1 - N/delta)((delta-1)^N + (-1)^(N+1))")
    top_n, top_delta = max(max_n, 10), max(max_delta, 10)
    for N in range(1, top_n + 1):
        for delta in range(1, top_delta + 1):
            w12.record((12 * heights.w_coeff(N, delta)).denominator == 1, N=N, delta=delta)
    for N in range(1, max_n + 1):
        for delta in range(2, max_delta + 1):
            v, w = heights.v_coeff(N, delta), heights.w_coeff(N, delta)
            vw.record(v == (-1) ** N * w, N=N, delta=delta, v=v, w=w)
            u1, u2 = heights.u_coeff(N, delta), heights.u_coeff_expanded(N, delta)
            uu.record(u1 == u2, N=N, delta=delta, factored=u1, expanded=u2)
            for r in range(1, N + 1):
                a, b = heights.alpha_coeff(N, r, delta), heights.beta_coeff(N, r, delta)
                expected = heights.blowup_tangent_shift(N, r)
                ba.record(b - a == expected, N=N, r=r, delta=delta, lhs=b - a, rhs=expected)
                ab_int.record(a.denominator == 1 and b.denominator == 1, N=N, r=r, delta=delta, alpha=a, beta=b)
            if N >= 2:
                lhs, rhs = heights.eta_coefficient_identity(N, delta)
                eta.record(lhs == rhs, N=N, delta=delta, lhs=lhs, rhs=rhs)
    return [w12, vw, uu, ba, ab_int, eta]


def euler_identities(max_n: int = 8, max_delta: int = 8) -> list[Outcome]:
    exc = Outcome("chi exceptional = chi of hypersurface in P^(N-1)")
    ser = Outcome("chi exceptional = delta [(1+y)^N/(1+delta y)]^[N-2]")
    semi = Outcome("semistable chi-sum = per-point sum")
    for N in range(2, max_n + 1):
        for delta in range(1, max_delta + 1):
            x, y = heights.chi_exceptional(N, delta), heights.chi_hypersurface(N - 1, delta)
            exc.record(x == y and x.denominator == 1, N=N, delta=delta, closed=x, hypersurface=y)
            z = heights.chi_exceptional_via_series(N, delta)
            ser.record(x == z, N=N, delta=delta, closed=x, series=z)
    for N in range(1, max_n + 1):
        for fibers in ([(2, 1), (3, 1)], [(2, 4)], [(3, 2), (4, 1), (6, 1)], []):
            fd = SingularFiberData(tuple(fibers))
            for deg_sigma in (12, 24):
                a = heights.chi_sum_semistable(N, deg_sigma, fd)
                b = heights.chi_sum_semistable_per_point(N, deg_sigma, fd)
                semi.record(a == b, N=N, deg_sigma=deg_sigma, fibers=fibers, closed=a, per_point=b)
    return [exc, ser, semi]


def random_stratification(rng: random.Random, unit: bool) -> heights.StratificationData:
    N = rng.randint(1, 6)
    comps = tuple((1 if unit else rng.randint(1, 5), rng.randint(-10, 10)) for _ in range(rng.randint(0, 5)))
    pairs = tuple(
        (1 if unit else rng.randint(1, 5), 1 if unit else rng.randint(1, 5), rng.randint(-10, 10))
        for _ in range(rng.randint(0, 6))
    )
    return heights.StratificationData(N, comps, pairs)


def alpha_x_identities(samples: int = 200, seed: int = 0) -> list[Outcome]:
    rng = random.Random(seed)
    red = Outcome("alpha_x with unit multiplicities = chi(D^2 minus D^3)/12")
    for _ in range(samples):
        data = random_stratification(rng, unit=True)
        lhs = heights.alpha_x(data)
        rhs = Fraction(sum(chi for *_, chi in data.pairs), 12)
        red.record(lhs == rhs, data=repr(data), lhs=lhs, rhs=rhs)
    return [red]


def milnor_identities(max_n: int = 3, max_delta: int = 5, extra_n4: bool = True) -> list[Outcome]:
    mu = Outcome("Milnor number of Fermat forms = (delta-1)^N")
    sym = Outcome("Milnor algebra Hilbert function is symmetric")
    cases = [(N, delta) for N in range(1, max_n + 1) for delta in range(2, max_delta + 1)]
    if extra_n4:
        cases += [(4, 2), (4, 3)]
    for N, delta in cases:
        F = milnor.fermat(N, delta)
        hd = milnor.hilbert_dims(F)
        value = milnor.milnor_number(F)
        mu.record(value == (delta - 1) ** N, N=N, delta=delta, mu=value, expected=(delta - 1) ** N)
        sym.record(hd.is_symmetric(), N=N, delta=delta, dims=list(hd.dims))
    return [mu, sym]


# -- driver -----------------------------------------------------------------


def _run_task(task):
    fn, args = task
    result = fn(*args)
    return result if isinstance(result, list) else [result]


def thread_count() -> int:
    raw = os.environ.get("GRIFF_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"GRIFF_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"GRIFF_THREADS must be a positive integer, got {raw!r}")
    return n


def run_all(bounds: SweepBounds, workers: int = 1) -> list[Outcome]:
    """Run every sweep and merge per-N partial results in a fixed order."""
    tasks: list[tuple[Callable, tuple]] = [(series_identity, (bounds.series_max_n,))]
    for N in range(1, bounds.max_n + 1):
        tasks.append((chow_identities_for_n, (N, bounds.max_d, bounds.deg_range, bounds.e_sign)))
    for N in range(1, bounds.scenario_max_n + 1):
        tasks.append((height_routes_for_n, (N, bounds.scenario_max_d, bounds.scenario_deg_range, bounds.e_sign,
                                            SCENARIO_CAP // bounds.scenario_max_n)))
    tasks += [
        (coefficient_bookkeeping, (bounds.coeff_max_n, bounds.coeff_max_delta)),
        (euler_identities, (bounds.coeff_max_n, bounds.coeff_max_delta)),
        (alpha_x_identities, ()),
        (milnor_identities, (bounds.milnor_max_n, bounds.milnor_max_delta, bounds.max_n >= 4)),
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]

    merged: dict[str, Outcome] = {}
    for group in results:
        for o in group:
            if o.name in merged:
                merged[o.name].merge(o)
            else:
                merged[o.name] = o
    return list(merged.values())

