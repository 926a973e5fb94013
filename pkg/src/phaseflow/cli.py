"""Command line entry point.

    phaseflow run <config.json>        execute a scenario end to end
    phaseflow validate <config.json>   check a config without computing
    phaseflow list-scenarios           print the available scenarios

Exit codes: 0 all checks passed, 1 checks failed, 2 invalid config,
3 numerical abort. The PHASEFLOW_OUT environment variable overrides the
configured output directory.
"""

from __future__ import annotations

import argparse
import sys

from .config import OUTPUT_DIR_ENV, SCENARIOS, ConfigError, load_config
from .evolve import PropagationError
from .scenarios import run_scenario

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_NUMERICAL = 3

SCENARIO_NOTES = {
    "run1d": "ensemble transport; verifies position and momentum marginals at checkpoints",
    "run2d": "chained-map sampling; verifies the three 2D marginals",
    "wigner-compare": "Wigner negativity vs the nonnegative transport density",
    "takabayasi": "phase-gradient momentum marginal vs the quantile-map momenta",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseflow",
        description="Deterministic phase-space dynamics with exact quantum marginals.",
        epilog=f"Output directory override: ${OUTPUT_DIR_ENV}",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="execute a scenario from a config file")
    run_p.add_argument("config", help="path to the JSON experiment config")
    val_p = sub.add_parser("validate", help="validate a config file and exit")
    val_p.add_argument("config", help="path to the JSON experiment config")
    sub.add_parser("list-scenarios", help="list available scenarios")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list-scenarios":
        for name in SCENARIOS:
            print(f"{name:16s} {SCENARIO_NOTES[name]}")
        return EXIT_OK

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    if args.command == "validate":
        print(f"ok: {args.config} is a valid {config.scenario} config")
        return EXIT_OK

    try:
        summary = run_scenario(config)
    except PropagationError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    for report in summary["reports"]:
        parts = [f"{k}={v:.6g}" for k, v in report.items() if k in ("ks", "l1")]
        print(f"{report['name']:24s} {' '.join(parts)}")
    verdict = "PASS" if summary["passed"] else "FAIL"
    print(f"{config.scenario}: {verdict} (outputs in {config.output_dir})")
    return EXIT_OK if summary["passed"] else EXIT_CHECKS_FAILED


if __name__ == "__main__":
    sys.exit(main())
