"""Command-line interface.

Exit codes: 0 when the requested check certifies (or the query succeeds),
1 when a check or certification fails, 2 on usage errors.  Every command
prints one canonical JSON document to stdout; --out writes the same bytes
to a file, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lattice import DivisorClass, parse_divisor
from .weyl import orbit_counts_by_degree, weyl_orbit
from .surface_cones import is_ample_hf_family, is_nef_up_to_degree
from .hilb import cone_duality_check
from .bridgeland import GiesekerFalsified, gieseker_wall, slice_a1, slice_a2
from .translations import CoverageConfig, coverage_experiment
from .campaign import Campaign, CampaignUsageError, run_campaign
from .reporting import dumps_json
from fractions import Fraction


class UsageError(ValueError):
    pass


def _parse_divisor_arg(text: str) -> DivisorClass:
    text = text.strip()
    if text.startswith("{"):
        try:
            return DivisorClass.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad divisor JSON: {exc}") from exc
    try:
        return parse_divisor(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_degree(value: int) -> int:
    if value < 0:
        raise UsageError("--max-degree must be nonnegative")
    return value


def _check_n(value: int) -> int:
    if value < 3:
        raise UsageError("--n must be at least 3")
    return value


def _slice_for(label: str, n: int):
    return slice_a1(n) if label == "A1" else slice_a2(n)


def cmd_weyl_orbit(args) -> tuple[dict, int]:
    start = _parse_divisor_arg(args.start)
    if not start.is_integral():
        raise UsageError("orbit start must be an integral class")
    degree = _check_degree(args.max_degree)
    orbit = weyl_orbit(start, degree)
    payload = {
        "start": str(start),
        "max_degree": degree,
        "total": len(orbit),
        "counts_by_degree": {
            str(d): c for d, c in orbit_counts_by_degree(orbit).items()
        },
        "classes": [c.to_json() for c in orbit],
    }
    return payload, 0


def cmd_surface_nef(args) -> tuple[dict, int]:
    d = _parse_divisor_arg(args.divisor)
    degree = _check_degree(args.max_degree)
    cert = is_nef_up_to_degree(d, degree)
    return cert.to_json(), 0 if cert.nef_up_to_bound else 1


def cmd_surface_ample_family(args) -> tuple[dict, int]:
    n = _check_n(args.n)
    if args.which == "A1":
        report = is_ample_hf_family(Fraction(n, 3), 0, n - Fraction(3, 2))
    else:
        report = is_ample_hf_family(0, Fraction(n, 2), n - Fraction(3, 2))
    payload = {"n": n, "which": args.which, **report.to_json()}
    return payload, 0 if report.ample else 1


def cmd_hilb_check_theorem(args) -> tuple[dict, int]:
    n = _check_n(args.n)
    degree = _check_degree(args.max_degree)
    report = cone_duality_check(n, degree)
    return report.to_json(), 0 if report.passed else 1


def cmd_walls_gieseker(args) -> tuple[dict, int]:
    n = _check_n(args.n)
    degree = _check_degree(args.max_degree)
    sl = _slice_for(args.slice, n)
    try:
        wall, cert = gieseker_wall(sl, degree)
    except GiesekerFalsified as exc:
        return {"certified": False, "slice": args.slice, "n": n, "error": str(exc)}, 1
    return {"wall": wall.to_json(), "certificate": cert.to_json()}, 0


def cmd_coneconj_cover(args) -> tuple[dict, int]:
    n = _check_n(args.n)
    degree = _check_degree(args.max_degree)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    cfg = CoverageConfig(n=n, samples=args.samples, seed=args.seed, max_h_degree=degree)
    report = coverage_experiment(cfg)
    return report.to_json(), 0 if report.passed else 1


def cmd_campaign_run(args) -> tuple[dict, int]:
    degree = _check_degree(args.max_degree)
    slices = tuple(s.strip() for s in args.slices.split(",") if s.strip())
    campaign = Campaign(
        n_start=args.n_start,
        n_end=args.n_end,
        max_h_degree=degree,
        slices=slices,
        threads=args.threads,
    )
    try:
        result = run_campaign(campaign)
    except CampaignUsageError as exc:
        raise UsageError(str(exc)) from exc
    return result.to_json(), 0 if result.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="also write the JSON report to this path")
    common.add_argument(
        "--threads", type=int, default=1, help="worker threads (campaign only)"
    )
    common.add_argument(
        "--seed", type=int, default=0, help="RNG seed for sampling commands"
    )

    parser = argparse.ArgumentParser(
        prog="hilbnef",
        description="Exact nef-cone certification for Hilbert schemes of "
        "points on the nine-point blowup.",
    )
    top = parser.add_subparsers(dest="group", required=True)

    weyl = top.add_parser("weyl", help="Weyl group computations").add_subparsers(
        dest="command", required=True
    )
    orbit = weyl.add_parser("orbit", parents=[common], help="degree-bounded orbit")
    orbit.add_argument("--start", required=True, help="class, e.g. E9 or H-E1")
    orbit.add_argument("--max-degree", type=int, default=3)
    orbit.set_defaults(handler=cmd_weyl_orbit)

    surface = top.add_parser("surface", help="surface cone checks").add_subparsers(
        dest="command", required=True
    )
    nef = surface.add_parser("nef", parents=[common], help="degree-bounded nef check")
    nef.add_argument("--divisor", required=True, help="class text or JSON")
    nef.add_argument("--max-degree", type=int, default=3)
    nef.set_defaults(handler=cmd_surface_nef)
    ample = surface.add_parser(
        "ample-family", parents=[common], help="closed-form ampleness for A1/A2"
    )
    ample.add_argument("--n", type=int, required=True)
    ample.add_argument("--which", choices=("A1", "A2"), required=True)
    ample.set_defaults(handler=cmd_surface_ample_family)

    hilb = top.add_parser("hilb", help="Hilbert scheme cone checks").add_subparsers(
        dest="command", required=True
    )
    check = hilb.add_parser(
        "check-theorem", parents=[common], help="duality scan of the bounding cone"
    )
    check.add_argument("--n", type=int, required=True)
    check.add_argument("--max-degree", type=int, default=3)
    check.set_defaults(handler=cmd_hilb_check_theorem)

    walls = top.add_parser("walls", help="wall computations").add_subparsers(
        dest="command", required=True
    )
    gieseker = walls.add_parser(
        "gieseker", parents=[common], help="certify the extremal wall"
    )
    gieseker.add_argument("--slice", choices=("A1", "A2"), required=True)
    gieseker.add_argument("--n", type=int, required=True)
    gieseker.add_argument("--max-degree", type=int, default=3)
    gieseker.set_defaults(handler=cmd_walls_gieseker)

    coneconj = top.add_parser(
        "coneconj", help="cone conjecture experiments"
    ).add_subparsers(dest="command", required=True)
    cover = coneconj.add_parser(
        "cover", parents=[common], help="random reduction coverage"
    )
    cover.add_argument("--n", type=int, required=True)
    cover.add_argument("--samples", type=int, default=100)
    cover.add_argument("--max-degree", type=int, default=3)
    cover.set_defaults(handler=cmd_coneconj_cover)

    camp = top.add_parser("campaign", help="full certification").add_subparsers(
        dest="command", required=True
    )
    run = camp.add_parser("run", parents=[common], help="run every check per n")
    run.add_argument("--n-start", type=int, default=3)
    run.add_argument("--n-end", type=int, default=12)
    run.add_argument("--max-degree", type=int, default=3)
    run.add_argument("--slices", default="A1,A2")
    run.set_defaults(handler=cmd_campaign_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = dumps_json(payload)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
