"""Command-line front end: ``sweep``, ``poles`` and ``validate``.

Exit codes: 0 on success, 1 on a configuration error, 2 on a solver
failure (``poles``, ``validate``).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import load_config
from .errors import CavityResponseError, ConfigError
from .export import export
from .sweep import evaluate_point, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cavity-response", description="Cavity-dressed linear response spectra.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="evaluate observables over the configured grid and export them")
    s.add_argument("config")
    s.add_argument("--output", help="output path (default: config 'output', else stdout)")
    s.add_argument("--format", choices=("csv", "structured"), help="overrides config 'format'")
    s.add_argument("--threads", type=int, default=1)

    q = sub.add_parser("poles", help="print pole frequencies at every axis point")
    q.add_argument("config")

    sub.add_parser("validate", help="run the built-in oracle suites and print a pass/fail table")
    return p


def _sweep(args) -> int:
    config = load_config(args.config)
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    table = run_sweep(config, threads=args.threads)
    fmt = args.format or config.format
    path = args.output or config.output or None
    try:
        data = export(table, fmt, path)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
    failed = table.metadata["failed"]
    if failed:
        print(f"warning: {len(failed)} axis point(s) failed; see metadata", file=sys.stderr)
    return EXIT_OK


def _poles(args) -> int:
    config = load_config(args.config)
    config = type(config)(**{**config.as_dict(), "observables": ("poles",)})
    status = EXIT_OK
    name = "plasma_freq" if config.model == "qhe" and config.axis == "none" else config.axis
    if name == "none":
        name = "coupling"
    for a in config.axis_values():
        try:
            _, poles = evaluate_point(config, float(a))
        except (CavityResponseError, ArithmeticError) as exc:
            print(f"{name}={a:.17g}\tFAILED\t{type(exc).__name__}: {exc}")
            status = EXIT_SOLVER
            continue
        print(f"{name}={a:.17g}\t" + "\t".join("%.17g" % p for p in poles))
    return status


def _validate(args) -> int:
    from .validation import format_result, run_all

    results = run_all()
    for r in results:
        print(format_result(r))
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return EXIT_OK if n_pass == len(results) else EXIT_SOLVER


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"sweep": _sweep, "poles": _poles, "validate": _validate}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CavityResponseError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
