"""Command-line front end: ``griff verify | height | milnor | euler``.

Exit codes: 0 pass/feasible, 1 identity or route failure, 2 infeasible
scenario (or an input outside the theory's hypotheses), 64 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from griffheight import chow, heights, milnor, sweeps
from griffheight.chow import PencilGeometry
from griffheight.exact_arith import format_rational
from griffheight.heights import SingularFiberData, StratificationData

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64


class InputError(Exception):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    lhs: str | None = None
    rhs: str | None = None
    checked: int = 1
    witness: dict | None = None


@dataclass
class Report:
    command: str
    inputs: dict
    values: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    exit_code: int = 0
    elapsed_s: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        raw = json.loads(text)
        raw["checks"] = [Check(**c) for c in raw.get("checks", [])]
        return cls(**raw)


def _fmt(x) -> str:
    return format_rational(x) if isinstance(x, (Fraction, int)) and not isinstance(x, bool) else str(x)


# -- input parsing ----------------------------------------------------------


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _int_field(obj: dict, key: str) -> int:
    if key not in obj:
        raise InputError(f"missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"field {key!r} must be a JSON integer, got {v!r}")
    return v


def parse_fibers(items) -> SingularFiberData:
    if not isinstance(items, list):
        raise InputError("'fibers' must be a list of {delta, count} records")
    try:
        return SingularFiberData(tuple((_int_field(f, "delta"), _int_field(f, "count")) for f in items))
    except (ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"bad fibers: {exc}") from None


def parse_scenario(obj) -> tuple[PencilGeometry, SingularFiberData]:
    if not isinstance(obj, dict):
        raise InputError("scenario must be a JSON object")
    try:
        geom = PencilGeometry(_int_field(obj, "N"), _int_field(obj, "d"), _int_field(obj, "deg_E"),
                              _int_field(obj, "deg_M"))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return geom, parse_fibers(obj.get("fibers", []))


def parse_stratification(obj) -> StratificationData:
    if not isinstance(obj, dict):
        raise InputError("stratification must be a JSON object")
    try:
        comps = tuple((_int_field(c, "m"), _int_field(c, "chi")) for c in obj.get("components", []))
        pairs = tuple((_int_field(p, "mi"), _int_field(p, "mj"), _int_field(p, "chi")) for p in obj.get("pairs", []))
        return StratificationData(_int_field(obj, "N"), comps, pairs)
    except (ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"bad stratification data: {exc}") from None


def parse_poly(obj) -> milnor.HomogeneousPoly:
    records = obj.get("terms") if isinstance(obj, dict) else obj
    if not isinstance(records, list):
        raise InputError("polynomial must be a list of {exponents, coeff} records")
    try:
        return milnor.HomogeneousPoly.from_records(records)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"bad polynomial: {exc}") from None


# -- commands ---------------------------------------------------------------


def cmd_verify(max_n: int, max_d: int, deg_range: int, e_sign: int = -1, workers: int = 1) -> Report:
    if max_n < 1 or max_d < 2 or deg_range < 0:
        raise InputError("need --max-n >= 1, --max-d >= 2, --deg-range >= 0")
    bounds = sweeps.SweepBounds.from_cli(max_n, max_d, deg_range, e_sign)
    outcomes = sweeps.run_all(bounds, workers)
    checks = []
    for o in outcomes:
        w = o.counterexample or {}
        checks.append(Check(o.name, o.passed, _str_or_none(w.get("lhs")), _str_or_none(w.get("rhs")), o.checked,
                            o.counterexample))
    report = Report("verify", {"max_n": max_n, "max_d": max_d, "deg_range": deg_range}, checks=checks)
    report.values = {"identities": len(checks), "points": sum(o.checked for o in outcomes)}
    report.exit_code = EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
    return report


def _str_or_none(v):
    return None if v is None else str(v)


def cmd_height(geom: PencilGeometry, fibers: SingularFiberData) -> Report:
    hr = heights.height_report(geom, fibers)
    report = Report(
        "height",
        {"N": geom.N, "d": geom.d, "deg_E": geom.deg_e, "deg_M": geom.deg_m,
         "fibers": [{"delta": d, "count": c} for d, c in fibers]},
    )
    report.values = {
        "ht_int": _fmt(hr.ht_int),
        "sigma_count_lhs": _fmt(hr.sigma_count_lhs),
        "sigma_count_rhs": _fmt(hr.sigma_count_rhs),
        "feasible": hr.feasible,
        "stable_height_closed": _fmt(hr.stable_height_closed),
        "stable_height_chow": _fmt(hr.stable_height_chow),
        "agree": hr.agree,
    }
    report.checks = [
        Check("critical-point count", hr.feasible, _fmt(hr.sigma_count_lhs), _fmt(hr.sigma_count_rhs)),
        Check("stable height: closed formula = Chow-ring route", hr.agree, _fmt(hr.stable_height_closed),
              _fmt(hr.stable_height_chow)),
    ]
    if not hr.agree:
        report.exit_code = EXIT_FAIL
    elif not hr.feasible:
        report.exit_code = EXIT_INFEASIBLE
    return report


def cmd_milnor(F: milnor.HomogeneousPoly) -> Report:
    report = Report("milnor", {"num_vars": F.num_vars, "degree": F.degree, "terms": F.to_records()})
    if F.degree < 2:
        raise InputError("need a form of degree >= 2")
    hd = milnor.hilbert_dims(F)
    expected = (F.degree - 1) ** F.num_vars
    report.values = {"polynomial": str(F), "hilbert_dims": list(hd.dims), "socle_bound": hd.socle_bound,
                     "expected": expected}
    if not hd.isolated:
        report.values["verdict"] = "non-isolated singularity; projective cone singular"
        report.values["milnor_number"] = None
        report.exit_code = EXIT_INFEASIBLE
        return report
    mu = sum(hd.dims[: hd.socle_bound + 1])
    report.values["milnor_number"] = mu
    report.values["verdict"] = "isolated singularity; projective cone smooth"
    report.checks = [
        Check("milnor number = (delta-1)^N", mu == expected, str(mu), str(expected)),
        Check("Hilbert function symmetric", hd.is_symmetric()),
    ]
    report.exit_code = EXIT_OK if all(c.passed for c in report.checks) else EXIT_FAIL
    return report


def cmd_euler(kind: str, args) -> Report:
    if kind == "hypersurface":
        _require(args.dim >= 1 and args.degree >= 1, "need --dim >= 1 and --degree >= 1")
        v = heights.chi_hypersurface(args.dim, args.degree)
        return Report("euler", {"kind": kind, "dim": args.dim, "degree": args.degree}, {"chi": _fmt(v)})
    if kind == "exceptional":
        _require(args.n >= 2 and args.delta >= 1, "need --n >= 2 and --delta >= 1")
        closed = heights.chi_exceptional(args.n, args.delta)
        hyp = heights.chi_hypersurface(args.n - 1, args.delta)
        r = Report("euler", {"kind": kind, "n": args.n, "delta": args.delta},
                   {"chi": _fmt(closed), "chi_hypersurface": _fmt(hyp)},
                   [Check("closed form = hypersurface route", closed == hyp, _fmt(closed), _fmt(hyp))])
        r.exit_code = EXIT_OK if closed == hyp else EXIT_FAIL
        return r
    if kind == "alpha-x":
        _require(args.file is not None, "alpha-x needs --file")
        data = parse_stratification(_load_json(args.file))
        v = heights.alpha_x(data)
        r = Report("euler", {"kind": kind, "file": args.file}, {"alpha_x": _fmt(v)})
        if all(m == 1 for m, _ in data.components) and all(p[0] == p[1] == 1 for p in data.pairs):
            reduced = Fraction(sum(p[2] for p in data.pairs), 12)
            r.values["reduced_formula"] = _fmt(reduced)
            r.checks.append(Check("unit multiplicities: chi(D^2 minus D^3)/12", v == reduced, _fmt(v), _fmt(reduced)))
            r.exit_code = EXIT_OK if v == reduced else EXIT_FAIL
        return r
    if kind == "chi-sum":
        _require(args.n >= 1 and args.deg_sigma is not None, "chi-sum needs --n and --deg-sigma")
        fibers = _fibers_from_flags(args.fiber or [])
        try:
            closed = heights.chi_sum_semistable(args.n, args.deg_sigma, fibers)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        per_point = heights.chi_sum_semistable_per_point(args.n, args.deg_sigma, fibers)
        r = Report("euler", {"kind": kind, "n": args.n, "deg_sigma": args.deg_sigma,
                             "fibers": [{"delta": d, "count": c} for d, c in fibers]},
                   {"chi": _fmt(closed), "chi_per_point": _fmt(per_point)},
                   [Check("closed sum = per-point sum", closed == per_point, _fmt(closed), _fmt(per_point))])
        r.exit_code = EXIT_OK if closed == per_point else EXIT_FAIL
        return r
    raise InputError(f"unknown kind {kind!r}")


def _require(cond: bool, msg: str):
    if not cond:
        raise InputError(msg)


def _fibers_from_flags(flags: list[str]) -> SingularFiberData:
    entries = []
    for f in flags:
        delta, _, count = f.partition(":")
        try:
            entries.append((int(delta), int(count or 1)))
        except ValueError:
            raise InputError(f"--fiber expects DELTA[:COUNT], got {f!r}") from None
    try:
        return SingularFiberData(tuple(entries))
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- output -----------------------------------------------------------------


def _decimal(v) -> str | None:
    if isinstance(v, str) and "/" in v:
        num, den = v.split("/")
        return f"{int(num) / int(den):.6g}"
    return None


def render_text(report: Report, decimal: bool = False) -> str:
    lines = [f"== {report.command} =="]
    for k, v in report.inputs.items():
        lines.append(f"  {k}: {v}")
    for k, v in report.values.items():
        extra = ""
        if decimal and (approx := _decimal(v)) is not None:
            extra = f"   (approx. {approx})"
        lines.append(f"{k} = {v}{extra}")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"[{status}] {c.name}"
        if c.checked != 1:
            line += f" ({c.checked} points)"
        if not c.passed:
            if c.witness:
                line += f"\n    counterexample: {json.dumps(c.witness)}"
            elif c.lhs is not None:
                line += f"\n    lhs = {c.lhs}, rhs = {c.rhs}"
        lines.append(line)
    if report.command == "height" and not report.values.get("feasible", True):
        lines.append("warning: scenario violates the critical-point count; heights are formal")
    lines.append(f"exit {report.exit_code} ({report.elapsed_s:.2f}s)")
    return "\n".join(lines)


# -- argparse ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="griff", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    p.add_argument("--decimal", action="store_true", help="add approximate decimal renderings")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run all identity sweeps")
    v.add_argument("--max-n", type=int, default=6)
    v.add_argument("--max-d", type=int, default=7)
    v.add_argument("--deg-range", type=int, default=3)
    v.add_argument("--omega-e-sign", type=int, choices=(-1, 1), default=-1, help=argparse.SUPPRESS)

    h = sub.add_parser("height", help="stable height of a scenario file")
    h.add_argument("scenario_file")

    m = sub.add_parser("milnor", help="Milnor number of a homogeneous form")
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--fermat", nargs=2, type=int, metavar=("N", "DELTA"))
    g.add_argument("--poly", metavar="FILE", help="JSON list of {exponents, coeff}")

    e = sub.add_parser("euler", help="Euler characteristics and alpha_x")
    e.add_argument("kind", choices=("hypersurface", "exceptional", "alpha-x", "chi-sum"))
    e.add_argument("--dim", type=int)
    e.add_argument("--degree", type=int)
    e.add_argument("--n", type=int)
    e.add_argument("--delta", type=int)
    e.add_argument("--file")
    e.add_argument("--deg-sigma", type=int)
    e.add_argument("--fiber", action="append", metavar="DELTA[:COUNT]")

    for sp in (v, h, m, e):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--decimal", action="store_true", default=argparse.SUPPRESS)
    return p


def _dispatch(args) -> Report:
    if args.command == "verify":
        return cmd_verify(args.max_n, args.max_d, args.deg_range, args.omega_e_sign, sweeps.thread_count())
    if args.command == "height":
        return cmd_height(*parse_scenario(_load_json(args.scenario_file)))
    if args.command == "milnor":
        if args.fermat:
            N, delta = args.fermat
            _require(N >= 1 and delta >= 2, "--fermat needs N >= 1 and DELTA >= 2")
            return cmd_milnor(milnor.fermat(N, delta))
        return cmd_milnor(parse_poly(_load_json(args.poly)))
    if args.command == "euler":
        for name in ("dim", "degree", "n", "delta"):
            if getattr(args, name) is None and args.kind in _NEEDS.get(name, ()):
                raise InputError(f"{args.kind} needs --{name}")
        return cmd_euler(args.kind, args)
    raise InputError(f"unknown command {args.command}")


_NEEDS = {"dim": ("hypersurface",), "degree": ("hypersurface",), "n": ("exceptional", "chi-sum"),
          "delta": ("exceptional",)}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        report = _dispatch(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.elapsed_s = round(time.perf_counter() - start, 3)
    if args.json:
        print(report.to_json())
    else:
        print(render_text(report, args.decimal))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
