"""Command-line entry point: `targetrace simulate|bounds --config <path>`."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from importlib.metadata import PackageNotFoundError, version

from .analytic import FailedToConverge
from .model import UnsupportedCombination
from .sweep import ConfigError, load_config, run_sweep, write_csv, write_json

WORKERS_ENV = "TARGETRACE_WORKERS"


def _version() -> str:
    try:
        return version("targetrace")
    except PackageNotFoundError:
        return "0.1.0"


def _resolve_workers(flag: int | None) -> int:
    if flag is not None:
        value = flag
    elif os.environ.get(WORKERS_ENV):
        try:
            value = int(os.environ[WORKERS_ENV])
        except ValueError:
            raise ConfigError(
                f"{WORKERS_ENV}: expected an integer, got {os.environ[WORKERS_ENV]!r}"
            ) from None
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise ConfigError(f"workers: must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="targetrace",
        description="Sequential click-race target finding: analytic bounds and Monte Carlo sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the sweep with Monte Carlo campaigns")
    bounds = sub.add_parser("bounds", help="evaluate analytic quantities only (no Monte Carlo)")
    for p in (sim, bounds):
        p.add_argument("--config", required=True, help="path to the JSON sweep configuration")
        p.add_argument("--out", help="CSV output path (default: config output_path)")
        p.add_argument("--json", help="also write a JSON mirror of the table")
    sim.add_argument("--seed", type=int, help="override the config seed (unsigned 64-bit)")
    sim.add_argument("--workers", type=int,
                     help=f"parallel workers (default: ${WORKERS_ENV} or CPU count)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if getattr(args, "seed", None) is not None:
            if not 0 <= args.seed < 1 << 64:
                raise ConfigError(f"--seed must fit in 64 bits, got {args.seed}")
            config = replace(config, seed=args.seed)
        with_mc = args.command == "simulate"
        workers = _resolve_workers(getattr(args, "workers", None)) if with_mc else 1
        rows = run_sweep(config, workers=workers, with_mc=with_mc)
        out = args.out or config.output_path
        write_csv(rows, out)
        if args.json:
            write_json(rows, args.json)
        failed = sum(1 for row in rows if row.error)
        note = f" ({failed} row(s) recorded an error)" if failed else ""
        print(f"wrote {len(rows)} rows to {out}{note}")
        return 0
    except (ConfigError, UnsupportedCombination, FailedToConverge) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
