"""Command-line front end.

Exit codes: 0 findings computed and consistent, 1 anomaly or oracle failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ScenarioError, ScenarioMismatch
from .mc import SimConfig, run_oracle
from .order_stats import Kind
from .ordering import check_hr, check_lr, check_rh, check_st
from .reproduce import TARGETS, reproduce
from .scenario_files import load_scenario
from .theorems import ANOMALY, THEOREM_IDS, verify_theorem

EXIT_OK, EXIT_FINDING_FAILED, EXIT_CONFIG = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-points", type=int, default=None, metavar="N", help="grid size (default: scenario value)")
    p.add_argument("--tol", type=float, default=None, metavar="T", help="monotonicity slack mono_tol")
    p.add_argument("--seed", type=int, default=None, metavar="S", help="Monte Carlo seed")
    p.add_argument("--out", default=None, metavar="DIR", help="directory for CSV output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stochord", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="run a bundled scenario and write figure CSVs")
    p.add_argument("name", choices=TARGETS)
    _common(p)

    p = sub.add_parser("theorem", help="check one preservation theorem on a scenario")
    p.add_argument("scenario", help="scenario YAML file, or bundled:<name>")
    p.add_argument("--id", dest="theorem_id", required=True, choices=THEOREM_IDS)
    _common(p)

    p = sub.add_parser("check", help="check an order between the scenario's two random extremes")
    p.add_argument("scenario")
    p.add_argument("--relation", required=True, choices=("st", "hr", "rh", "lr"))
    _common(p)

    p = sub.add_parser("oracle", help="Monte Carlo check of the analytic mixture curves")
    p.add_argument("scenario")
    p.add_argument("--samples", type=int, default=None, help="override the scenario sample count")
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    return parser


def _overrides(args) -> dict:
    return {"grid_points": args.grid_points, "tol": args.tol, "seed": args.seed}


def cmd_reproduce(args) -> int:
    out = Path(args.out or "stochord_out")
    rep = reproduce(args.name, out, grid_points=args.grid_points, tol=args.tol)
    for t in rep.text:
        print(t)
    for f in rep.files:
        print(f"wrote {f}")
    return EXIT_OK if rep.ok else EXIT_FINDING_FAILED


def cmd_theorem(args) -> int:
    sc = load_scenario(args.scenario, **_overrides(args))
    report = verify_theorem(args.theorem_id, sc)
    print(report.to_text())
    return EXIT_FINDING_FAILED if report.classification == ANOMALY else EXIT_OK


def cmd_check(args) -> int:
    sc = load_scenario(args.scenario, **_overrides(args))
    a, b = sc.extreme("x"), sc.extreme("y")
    quantity, check = {"st": ("sf", check_st), "hr": ("sf", check_hr),
                       "rh": ("cdf", check_rh), "lr": ("pdf", check_lr)}[args.relation]
    v = check(getattr(a, quantity), getattr(b, quantity), sc.grid)
    name = "1:N" if sc.kind is Kind.MIN else "N:N"
    print(f"X({name}) <=_{args.relation} Y({name}) on scenario {sc.name!r}: {v.direction}")
    print(v)
    print("--- summary ---")
    print(json.dumps(v.summary(), sort_keys=True))
    return EXIT_OK


def cmd_oracle(args) -> int:
    sc = load_scenario(args.scenario, **_overrides(args), samples=args.samples)
    if sc.mc is None:
        raise ScenarioError(f"scenario {sc.name!r} has no 'mc' section")
    cfg = SimConfig(sc.mc.get("seed", 42), sc.mc.get("samples", 1_000_000), sc.mc["checkpoints"],
                    sc.mc.get("confidence_k", 3.0))
    ok = True
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for which in ("x", "y"):
        report = run_oracle(sc.extreme(which), cfg, workers=args.workers)
        label = "sf" if sc.kind is Kind.MIN else "cdf"
        print(f"{which.upper()} random {sc.kind.value}: empirical vs analytic {label}, "
              f"seed {cfg.seed}, {cfg.n_samples} samples")
        print(report.to_text())
        if out:
            path = out / f"{sc.name}_oracle_{which}.csv"
            report.write_csv(path)
            print(f"wrote {path}")
        ok &= report.passed
    return EXIT_OK if ok else EXIT_FINDING_FAILED


COMMANDS = {"reproduce": cmd_reproduce, "theorem": cmd_theorem, "check": cmd_check, "oracle": cmd_oracle}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ScenarioError, ScenarioMismatch, ValueError) as exc:
        print(f"stochord: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
