"""Command-line interface.

Exit codes: 0 success (or realizable), 1 not realizable, 2 bad input or
parameters, 3 a construction failed its closed-form check.

Files are JSON.  A network is ``{"n": 3, "kind": "rcmsn", "events": [[2, 3], ...]}``;
an arrangement is ``{"lines": [{"slope": "1/2" | "vertical", "intercept": "3"}, ...]}``.
Rationals are written as ``"p/q"`` strings.  Every JSON document the tool
writes carries ``"schema_version"``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path

import mpmath

from msncap import constructions, formulas
from msncap.core import Cmsn, deliveries, validate
from msncap.errors import MsnError
from msncap.geometry import STABLE_IF_DISJOINT, Arrangement, Line, cmsn_from_arrangement
from msncap.montecarlo import (
    estimate_gmsn_capacity,
    estimate_reach_table,
    estimate_rgmsn_capacity,
    partition_conjecture_experiment,
    random_rcmsn_capacity,
)
from msncap.oracle import capacity_chain_oracle
from msncap.realize import realize_rgmsn, realize_with_slope_set

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_CHECK = 0, 1, 2, 3
PLACES = Decimal("1e-10")


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting


def rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal(value) -> str:
    """Ten decimal places, rounding half to even."""
    with localcontext() as ctx:
        ctx.prec = 80
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        elif isinstance(value, mpmath.mpf):
            d = Decimal(mpmath.nstr(value, 40, strip_zeros=False))
        else:
            d = Decimal(repr(float(value)))
        return str(d.quantize(PLACES, rounding=ROUND_HALF_EVEN))


def show(value) -> str:
    if isinstance(value, Fraction):
        return f"{value} ≈ {decimal(value)}"
    return f"≈ {decimal(value)}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc


def parse_slope(text) -> Fraction | None:
    if str(text).strip().lower() in ("vertical", "inf", "infinity"):
        return None
    return parse_rational(text)


# ---------------------------------------------------------------------------
# files


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "lines": [
            {"slope": "vertical" if ln.vertical else rational(ln.slope), "intercept": rational(ln.intercept)}
            for ln in arr.lines
        ],
    }


def network_to_json(cmsn: Cmsn) -> dict:
    return {"schema_version": SCHEMA_VERSION, "n": cmsn.n, "kind": cmsn.kind, "events": [list(e) for e in cmsn.events]}


def load(path) -> tuple[Cmsn, Arrangement | None]:
    """Read a network or an arrangement file, told apart by their keys."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    if "lines" in data:
        try:
            arr = Arrangement(Line(parse_slope(d["slope"]), parse_rational(d["intercept"])) for d in data["lines"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"arrangement lines need slope and intercept: {exc}") from exc
        return cmsn_from_arrangement(arr, STABLE_IF_DISJOINT), arr
    if "events" in data and "n" in data:
        kind = data.get("kind", "cmsn")
        if kind not in ("rcmsn", "cmsn"):
            raise InputError(f"kind must be rcmsn or cmsn, got {kind!r}")
        try:
            cmsn = Cmsn.from_pairs(int(data["n"]), [tuple(int(x) for x in e) for e in data["events"]], kind)
        except (TypeError, ValueError) as exc:
            raise InputError(f"events must be pairs of integers: {exc}") from exc
        if any(len(e) != 2 for e in data["events"]):
            raise InputError("every event must have exactly two sensors")
        validate(cmsn)
        return cmsn, None
    raise InputError("expected a network (n, events) or an arrangement (lines)")


def dump(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_capacity(args) -> int:
    cmsn, _ = load(args.input)
    rep = capacity_chain_oracle(cmsn) if args.oracle else deliveries(cmsn)
    value = rep.absolute_capacity if args.absolute else rep.capacity
    if args.json:
        out = {
            "schema_version": SCHEMA_VERSION,
            "n": cmsn.n,
            "events": len(cmsn.events),
            "capacity": rational(rep.capacity),
            "absolute_capacity": rational(rep.absolute_capacity),
            "decimal": decimal(value),
        }
        if args.per_event:
            out["deliveries"] = list(rep.deliveries)
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    print(show(value))
    if args.per_event:
        print(" ".join(map(str, rep.deliveries)))
    return EXIT_OK


def _construct(kind, n, m, s):
    """Arrangement, closed-form name and expected value, or None when there is no exact target."""
    if kind == "min-gmsn":
        return constructions.min_capacity_gmsn(n), "min_rcmsn", formulas.min_rcmsn(n)
    if kind == "max-gmsn":
        return constructions.max_capacity_gmsn(n), "max_rcmsn", formulas.max_rcmsn(n)
    if kind == "grid":
        if m is None:
            raise MsnError("grid needs --m")
        return constructions.grid(m, n - m), "cap2", formulas.cap2(n)
    if kind == "opt3":
        return constructions.three_slope_optimal(n), "max3", formulas.max3(n)
    if kind == "opt4":
        return constructions.four_slope_optimal(n), "max4", formulas.max4(n)
    if s is None:
        raise MsnError("cd-family needs --s")
    return constructions.collector_distributor_family(n, s), "maxabs_limit", None


def cmd_construct(args) -> int:
    try:
        arr, name, expected = _construct(args.kind, args.n, args.m, args.s)
    except MsnError as exc:
        if type(exc).__name__ == "ConstructionFailed":
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CHECK
        raise
    rep = deliveries(cmsn_from_arrangement(arr, STABLE_IF_DISJOINT))
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": args.kind,
        "n": args.n,
        "capacity": rational(rep.capacity),
        "absolute_capacity": rational(rep.absolute_capacity),
        "closed_form": name,
    }
    if expected is not None:
        report["expected"] = rational(expected)
        report["check"] = "pass" if rep.capacity == expected else "fail"
    else:
        limit = formulas.maxabs_limit(args.s)
        report["limit"] = decimal(limit)
        report["check"] = "none"
    if args.kind == "grid":
        m, k = args.m, args.n - args.m
        want_abs = Fraction(m * k * (args.n + 2), args.n**2 * (args.n - 1))
        report["expected_absolute"] = rational(want_abs)
        if rep.absolute_capacity != want_abs:
            report["check"] = "fail"
    out = Path(args.out)
    dump(out, arrangement_to_json(arr))
    dump(out.with_name(out.stem + ".report.json"), report)
    print(f"capacity {show(rep.capacity)}")
    print(f"absolute {show(rep.absolute_capacity)}")
    print(f"check {report['check']}")
    return EXIT_CHECK if report["check"] == "fail" else EXIT_OK


def cmd_realize(args) -> int:
    cmsn, _ = load(args.input)
    if args.slopes is not None:
        slopes = [parse_slope(t) for t in args.slopes.split(",")]
        res = realize_with_slope_set(cmsn, slopes)
    else:
        res = realize_rgmsn(cmsn, args.max_slopes)
    if res:
        print("realizable")
        if args.witness:
            dump(args.witness, arrangement_to_json(res.witness))
        return EXIT_OK
    stage = res.certificate_note.split(":", 1)[0]
    print(f"not realizable (stage: {stage})")
    print(res.certificate_note)
    return EXIT_NO


def cmd_estimate(args) -> int:
    model = args.model
    if model == "gmsn":
        rep = estimate_gmsn_capacity(args.n, args.trials, args.seed, args.workers)
    elif model == "rgmsn":
        if args.s is None:
            raise MsnError("rgmsn needs --s")
        rep = estimate_rgmsn_capacity(args.n, args.s, args.trials, args.seed, args.workers)
    elif model == "reach-table":
        if args.s is None:
            raise MsnError("reach-table needs --s")
        rep = estimate_reach_table(args.s, args.n, args.trials, args.seed, args.workers)
    elif model == "conjecture":
        rep = partition_conjecture_experiment(args.n, args.trials, args.seed, args.workers)
    else:
        rep = random_rcmsn_capacity(args.n, args.trials, args.seed, args.workers)
    print(f"model {model} n {rep.n} trials {rep.trials} seed {rep.seed}")
    print(f"mean {decimal(rep.mean)} stderr {decimal(rep.stderr)}")
    for key, val in (rep.extra or {}).items():
        if key == "table":
            for label, p in val.items():
                print(f"{label} {decimal(p)}")
        else:
            print(f"{key} {val if isinstance(val, int) else decimal(val)}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["trial", "capacity"])
            for t, v in enumerate(rep.values):
                w.writerow([t, decimal(v)])
    return EXIT_OK


def cmd_formula(args) -> int:
    value = formulas.closed_form(args.name, n=args.n, s=args.s)
    print(show(value))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="msncap", description="Capacity and realizability of mobile sensor networks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("capacity", help="exact capacity of a network or arrangement file")
    c.add_argument("--input", required=True)
    c.add_argument("--absolute", action="store_true", help="divide by n*C(n,2) instead of n*L")
    c.add_argument("--per-event", action="store_true", help="print the deliveries of every event")
    c.add_argument("--json", action="store_true")
    c.add_argument("--oracle", action="store_true", help="use the brute-force chain oracle (n <= 12)")
    c.set_defaults(func=cmd_capacity)

    c = sub.add_parser("construct", help="write an extremal arrangement and a report")
    c.add_argument("--kind", required=True, choices=["min-gmsn", "max-gmsn", "grid", "opt3", "opt4", "cd-family"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, help="grid: lines in the first class")
    c.add_argument("--s", type=int, help="cd-family: number of slopes")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("realize", help="decide realizability by straight lines")
    c.add_argument("--input", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--slopes", help='comma-separated class slopes, e.g. "1,-1,-3" or "0,vertical"')
    g.add_argument("--max-slopes", type=int)
    c.add_argument("--witness", help="write the verified arrangement here")
    c.set_defaults(func=cmd_realize)

    c = sub.add_parser("estimate", help="seeded Monte Carlo estimates")
    c.add_argument("--model", required=True, choices=["gmsn", "rgmsn", "reach-table", "conjecture", "random-rcmsn"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--csv", help="per-trial values, header trial,capacity")
    c.set_defaults(func=cmd_estimate)

    c = sub.add_parser("formula", help="evaluate a closed form")
    c.add_argument("--name", required=True)
    c.add_argument("--n", type=int)
    c.add_argument("--s", type=int)
    c.set_defaults(func=cmd_formula)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MsnError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
