"""crsphere: build, verify and classify equivariant immersions S^3 -> CP^n.

Examples:
  crsphere build --phi1 --out phi1.json
  crsphere verify phi1.json --samples 32 --seed 42
  crsphere build --k 4 --l 0 --minimal | crsphere verify -
  echo '[-2,0,0,0,-2,0,0,0,-2]' | crsphere classify
  crsphere sweep --k 1 --l 0 --steps 25 --minimal > sweep.csv
  crsphere recover --b 0.5 --c 1.3333333333

Exit codes: 0 pass, 1 failed checks, 2 malformed input or bad parameters,
3 invariant violation, 4 not an immersion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import frames
from .errors import EquivarianceError, ImmersionError, InvariantError, ParameterError
from .families import FamilyParams, family_lift, minimal_t, phi1_lift, recover_integers
from .intrinsic import classify, curvature
from .verify import SWEEP_COLUMNS, dumps, lift_document, load_lift, sweep, verify_lift

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INVARIANT, EXIT_IMMERSION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read(source: str | None) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _parse_matrix(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("structure_matrix", data.get("C"))
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise UsageError("structure matrix must be numeric") from exc
    if arr.size != 9 or not np.all(np.isfinite(arr)):
        raise UsageError("structure matrix must have 9 finite entries")
    return arr.reshape(3, 3)


def cmd_classify(args) -> int:
    C = frames.check_structure_matrix(_parse_matrix(_read(args.input)))
    out = classify(C).to_json()
    R = curvature(C)
    out["sectional_curvatures"] = {"K12": R[0, 1, 0, 1], "K13": R[0, 2, 0, 2], "K23": R[1, 2, 1, 2]}
    out["invariants"] = frames.invariants(C).magnitudes()
    _emit(dumps(out), args.out)
    return EXIT_OK


def _family_from_args(args) -> FamilyParams:
    if args.k is None or args.l is None:
        raise UsageError("give --phi1 or both --k and --l")
    if (args.t is None) == (not args.minimal):
        raise UsageError("give exactly one of --t and --minimal")
    if args.minimal:
        if args.l < 0 or args.k <= args.l:
            raise ParameterError(f"need k > l >= 0, got k={args.k}, l={args.l}")
        return FamilyParams(args.k, args.l, minimal_t(args.k, args.l))
    return FamilyParams(args.k, args.l, args.t)


def cmd_build(args) -> int:
    if args.phi1:
        if any(v is not None for v in (args.k, args.l, args.t)) or args.minimal:
            raise UsageError("--phi1 takes no family parameters")
        lift = phi1_lift()
    else:
        lift = family_lift(_family_from_args(args))
    _emit(dumps(lift_document(lift)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 8:
        raise UsageError("--samples must be at least 8")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    try:
        lift = load_lift(_read(args.lift))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lift.check_unit()
    report = verify_lift(lift, samples=args.samples, seed=args.seed, tol=args.tol)
    _emit(dumps(report.to_json()), args.out)
    for msg in report.failures:
        print(f"FAIL {msg}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.k is None or args.l is None:
        raise UsageError("sweep needs --k and --l")
    if not (0 < args.t_min < args.t_max < math.pi / 2):
        raise UsageError("need 0 < t-min < t-max < pi/2")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    ts = list(np.linspace(args.t_min, args.t_max, args.steps))
    if args.minimal:
        tm = minimal_t(args.k, args.l)
        if args.t_min < tm < args.t_max and tm not in ts:
            ts = sorted(ts + [tm])
    rows = sweep(args.k, args.l, ts, samples=args.samples, seed=args.seed)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(float(v)) for k, v in row.items()})
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_recover(args) -> int:
    if args.b is None or args.c is None:
        raise UsageError("recover needs --b and --c")
    _emit(dumps(recover_integers(args.b, args.c).to_json()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crsphere", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a structure matrix (JSON, 9 numbers)")
    p.add_argument("input", nargs="?", default="-", help="JSON file, '-' for stdin")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="write a lift file")
    p.add_argument("--phi1", action="store_true", help="the non-Berger example in CP^2")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--t", type=float)
    p.add_argument("--minimal", action="store_true", help="use the minimal member of the family")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify a lift file and print a JSON report")
    p.add_argument("lift", help="lift file, '-' for stdin")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV of |H| and Berger data along a family")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--t-min", type=float, default=0.05)
    p.add_argument("--t-max", type=float, default=math.pi / 2 - 0.05)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--minimal", action="store_true", help="also sample the minimal t")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("recover", help="recover (k, l, t) from Berger parameters")
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_recover)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ImmersionError as exc:
        print(f"not an immersion: {exc}", file=sys.stderr)
        return EXIT_IMMERSION
    except EquivarianceError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
