"""Command-line entry point.

Subcommands: validate, sp, optimize, phase-map, dispersion, budget. Every
command reads one JSON config, prints its CSV table to stdout, optionally
copies it to --out, and (for the report commands) renders a PNG next to the
CSV unless --no-figure is passed.

Exit codes: 0 success, 2 config error, 3 solver not applicable, 4
combinatorial cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext
from dataclasses import replace
from pathlib import Path

from .errors import (
    CombinatorialExplosionError,
    ConfigError,
    HeterogeneousStubbornnessError,
    NoFixedPointError,
    PremiseNotMatchedError,
    SolverNotApplicableError,
    TiedMaximumError,
    ZeroOmegaError,
)
from .experiments import (
    REPORT_HEADER,
    PhaseMap,
    SpEvaluation,
    load_config,
    render_csv,
    run_budget,
    run_dispersion,
    run_optimize,
    run_phase_map,
    run_sp,
    run_validate,
)
from . import figures

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_CAP = 4

# Method-applicability failures: the config was fine, the requested solver
# cannot answer for this instance.
_SOLVER_ERRORS = (
    SolverNotApplicableError,
    TiedMaximumError,
    PremiseNotMatchedError,
    ZeroOmegaError,
    HeterogeneousStubbornnessError,
    NoFixedPointError,
)

_COMMANDS = (
    ("validate", "parse and resolve a config, report what it describes"),
    ("sp", "exact (and optionally estimated) sp0 of an explicit set"),
    ("optimize", "run the configured solvers over the configured budgets"),
    ("phase-map", "exhaustive K=1 winner over theta/omega grids"),
    ("dispersion", "full subset sweep of a ring: R(S) against sp0(S)"),
    ("budget", "walk count and depth for the configured accuracy targets"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fjpower",
        description="social power maximization for an external influencer",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _COMMANDS:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON experiment config")
        p.add_argument("--seed", type=int, default=None, help="override the config's master seed")
        p.add_argument("--out", default=None, help="also write the CSV to this path")
        p.add_argument("--threads", type=int, default=None,
                       help="cap BLAS threads (speed only, results are identical)")
        p.add_argument("--no-figure", action="store_true",
                       help="do not render the PNG next to --out")
    return parser


def _thread_cap(threads: int | None):
    if threads is None:
        return nullcontext()
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return nullcontext()
    return threadpool_limits(limits=threads)


def _emit(header, records, out_path: str | None) -> None:
    text = render_csv(header, records)
    sys.stdout.write(text)
    if out_path:
        Path(out_path).write_text(text)


def _figure_path(out_path: str) -> Path:
    return Path(out_path).with_suffix(".png")


def _run(command: str, config, out_path: str | None, no_figure: bool) -> int:
    if command == "validate":
        for line in run_validate(config).lines():
            print(line)
        return EXIT_OK
    if command == "sp":
        result = run_sp(config)
        _emit(SpEvaluation.HEADER, result.records(), out_path)
        return EXIT_OK
    if command == "optimize":
        rows = run_optimize(config)
        _emit(REPORT_HEADER, [r.fields() for r in rows], out_path)
        if out_path and not no_figure:
            figures.selection_figure(rows, _figure_path(out_path))
        return EXIT_OK
    if command == "phase-map":
        phase_map = run_phase_map(config)
        _emit(PhaseMap.HEADER, phase_map.records(), out_path)
        if out_path and not no_figure:
            figures.phase_map_figure(phase_map, _figure_path(out_path))
        return EXIT_OK
    if command == "dispersion":
        sweep = run_dispersion(config)
        _emit(sweep.HEADER, sweep.records(), out_path)
        if out_path and not no_figure:
            figures.dispersion_figure(sweep, _figure_path(out_path))
        return EXIT_OK
    if command == "budget":
        result = run_budget(config)
        _emit(result.HEADER, result.records(), out_path)
        return EXIT_OK
    raise ConfigError(f"unknown command {command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        out_path = args.out if args.out is not None else config.out
        with _thread_cap(args.threads):
            return _run(args.command, config, out_path, args.no_figure)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CombinatorialExplosionError as exc:
        print(f"combinatorial cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _SOLVER_ERRORS as exc:
        print(f"solver not applicable: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
