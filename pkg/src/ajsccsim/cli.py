"""Command-line entry point: run one named experiment with seeded determinism.

    ajsccsim <experiment> [--seed N] [--config FILE] [--out DIR] [--set key=value ...]

Config precedence: built-in defaults < config file (flat ``key = value``
lines) < --set flags.  Unknown keys are rejected.
"""
from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .experiments import EXPERIMENTS, run_experiment


def _parse_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _parse_set(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ajsccsim",
        description="Seeded experiments for the MOSFET-curve analog coding link.",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--config", default=None, help="flat key = value file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--set", dest="sets", action="append", default=[],
                        metavar="KEY=VALUE", help="override one config key")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        overrides = {}
        if args.config:
            overrides.update(_parse_config_file(args.config))
        overrides.update(_parse_set(args.sets))
        paths = run_experiment(args.experiment, seed=args.seed,
                               overrides=overrides, out_dir=args.out)
    except (ConfigError, OSError) as exc:
        print(f"ajsccsim: error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
