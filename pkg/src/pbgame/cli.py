"""Command-line entry point: ``pbgame simulate|solve|bounds|replay|verify``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import CapExceededError, ConfigurationError, IllegalMoveError, TranscriptFormatError
from .harness import ExperimentSpec, bounds_report, format_bounds, simulate_batch
from .solver import solve_table
from .transcript import ALL_CHECKS, replay_verify


def _k_value(text: str):
    return text if text in ("log", "biased") else int(text)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pbgame", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a batch of seeded games")
    sim.add_argument("--spec", type=Path, help="JSON file with ExperimentSpec fields")
    sim.add_argument("--n", type=int, nargs="+")
    sim.add_argument("--k", type=_k_value, nargs="+", help="integers, 'log' or 'biased'")
    sim.add_argument("--p", type=int, nargs="+")
    sim.add_argument("--b", type=int, nargs="+")
    sim.add_argument("--painter")
    sim.add_argument("--builder")
    sim.add_argument("--trials", type=int)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--out")
    sim.add_argument("--workers", type=int)
    sim.add_argument("--retain", choices=("none", "failures", "all"))
    sim.add_argument("--no-audit", action="store_true")

    sol = sub.add_parser("solve", help="exact winners for small boards")
    sol.add_argument("--max-n", type=int, default=5)
    sol.add_argument("--max-k", type=int, default=4)
    sol.add_argument("--p", type=int, default=1)
    sol.add_argument("--b", type=int, default=1)

    bnd = sub.add_parser("bounds", help="closed-form bounds on the minimal palette")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--b", type=int, default=1)

    rep = sub.add_parser("replay", help="replay and audit one transcript")
    rep.add_argument("--file", type=Path, required=True)
    rep.add_argument("--checks", help=f"comma-separated subset of {','.join(ALL_CHECKS)}")

    ver = sub.add_parser("verify", help="audit every transcript in a directory")
    ver.add_argument("directory", type=Path)
    ver.add_argument("--checks")
    return ap


def _checks(text):
    return None if not text else [c.strip() for c in text.split(",") if c.strip()]


def _simulate(args) -> int:
    data = {}
    if args.spec:
        data = vars(ExperimentSpec.from_file(args.spec)).copy()
    for name in ("n", "k", "p", "b", "painter", "builder", "trials", "seed", "out",
                 "workers", "retain"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.no_audit:
        data["audit"] = False
    batch = simulate_batch(ExperimentSpec(**data))
    print(batch.table())
    if batch.csv_path:
        print(f"wrote {batch.csv_path} and {batch.jsonl_path}")
    return 0


def _audit_one(path: Path, checks) -> bool:
    report = replay_verify(path, checks)
    print(f"{path}: {'PASS' if report.passed else 'FAIL'} ({report.status}) {report.summary()}")
    return report.passed


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "simulate":
            return _simulate(args)
        if args.command == "solve":
            print("n\tp\tb\tk\twinner")
            for row in solve_table(args.max_n, args.max_k, args.p, args.b):
                print("\t".join(map(str, row)))
            return 0
        if args.command == "bounds":
            print(format_bounds(bounds_report(args.n, args.b)))
            return 0
        if args.command == "replay":
            return 0 if _audit_one(args.file, _checks(args.checks)) else 1
        if args.command == "verify":
            files = sorted(args.directory.rglob("*.jsonl"))
            files = [f for f in files if f.name != "trials.jsonl"]
            if not files:
                print(f"no transcripts under {args.directory}", file=sys.stderr)
                return 1
            ok = sum(_audit_one(f, _checks(args.checks)) for f in files)
            print(f"{ok}/{len(files)} transcripts passed")
            return 0 if ok == len(files) else 1
    except (ConfigurationError, CapExceededError, TranscriptFormatError, IllegalMoveError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
