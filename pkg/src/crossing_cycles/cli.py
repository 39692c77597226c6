"""
Command line entry point ``cycles``.

Exit status: 0 on success, 2 for invalid input (arguments, configuration
files, schema or invariant violations), 3 when a numerical stage fails.
Diagnostics go to stderr at the level named by ``CYCLES_LOG``
(``error``, ``info`` or ``debug``; default ``error``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .closing import bound_report, cleared_difference, closing_pair
from .config import BUILTIN_CASES, ParseError, SystemConfig, builtin_config, load_config
from .fields import CenterKind, ValidationError
from .orbits import Rejected, verify_cycle
from .report import StageError, run, verified_cycles
from .solver import CycleCandidate
from .svgplot import parse_window, render_svg

__all__ = ["main", "build_parser"]

log = logging.getLogger("crossing_cycles")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(ValueError):
    pass


def _setup_logging():
    level_name = os.environ.get("CYCLES_LOG", "error").strip().lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("cycles: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(levels.get(level_name, logging.ERROR))
    if level_name not in levels:
        log.error("CYCLES_LOG=%r not understood, using 'error'", level_name)


def _pair(text: str, what: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"{what}: expected two comma-separated numbers")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise InputError(f"{what}: expected two comma-separated numbers") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON system configuration; a bare file name that is "
                        "not found locally is looked up among the shipped examples")
    common.add_argument("--case", help="built-in configuration (q1..q4, degenerate-no-cycles)")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--window", help="plot window xmin,xmax,ymin,ymax")
    common.add_argument("--json-indent", type=int, default=2, metavar="N",
                        help="JSON indentation (default 2; negative for compact)")
    common.add_argument("--timings", action="store_true",
                        help="record stage wall-clock times (output is then not reproducible)")

    parser = argparse.ArgumentParser(
        prog="cycles", description="Crossing limit cycles of saddle/center piecewise systems.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("bound", parents=[common], help="degree and Bezout bound for a kind")
    p.add_argument("--kind", help="Q1..Q4 (or take it from --config/--case)")

    sub.add_parser("closing-polys", parents=[common],
                   help="closing polynomials as monomial maps")
    sub.add_parser("solve", parents=[common],
                   help="solve, filter and verify; prints the cycle report")

    p = sub.add_parser("verify", parents=[common],
                       help="verify all admissible solutions or one given point")
    p.add_argument("--point", help="x,y of a single candidate to integrate")

    p = sub.add_parser("oracle", parents=[common],
                       help="cross-check against a half-return-map scan")
    p.add_argument("--range", dest="x_range", help="lo,hi scan range on the x semi-axis")
    p.add_argument("--samples", type=int, default=400)

    p = sub.add_parser("plot", parents=[common], help="SVG phase portrait of verified cycles")
    p.add_argument("--glyphs", type=int, default=0, metavar="N",
                   help="draw an N x N grid of direction marks")

    sub.add_parser("paper-examples", parents=[common],
                   help="run the built-in published examples (all, or one with --case)")
    return parser


def _resolve_config(args, required=True) -> SystemConfig | None:
    if args.config and args.case:
        raise InputError("give either --config or --case, not both")
    if args.case:
        return builtin_config(args.case)
    if args.config:
        path = Path(args.config)
        if not path.exists() and path.parent == Path(".") and path.suffix == ".json":
            try:
                cfg = builtin_config(path.stem)
            except ValidationError:
                pass
            else:
                log.info("using shipped example %s", path.name)
                return cfg
        return load_config(path)
    if required:
        raise InputError("a configuration is required (--config or --case)")
    return None


def _emit(args, payload) -> None:
    indent = args.json_indent if args.json_indent >= 0 else None
    seps = None if indent is not None else (",", ":")
    text = json.dumps(payload, indent=indent, separators=seps, allow_nan=True) + "\n"
    _write(args, text)


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_bound(args):
    if args.kind:
        kind = CenterKind.parse(args.kind)
    else:
        kind = _resolve_config(args).center.kind
    b = bound_report(kind)
    _emit(args, {"kind": kind.value, "d": b.d, "bezout": b.bezout,
                 "max_admissible": b.max_admissible})


def _cmd_closing(args):
    cfg = _resolve_config(args)
    try:
        pair = closing_pair(cfg.saddle, cfg.center)
        cleared = cleared_difference(cfg.center)
    except Exception as exc:
        raise StageError("closing", exc) from exc
    _emit(args, {"kind": pair.kind.value, "d_i": pair.d_i,
                 "P_S": pair.ps.monomial_map(), "P_i": pair.pi.monomial_map(),
                 "cleared_difference": cleared.monomial_map()})


def _cmd_solve(args):
    cfg = _resolve_config(args)
    _emit(args, run(cfg, timings=args.timings).to_dict())


def _cmd_verify(args):
    cfg = _resolve_config(args)
    if not args.point:
        _emit(args, run(cfg, timings=args.timings).to_dict())
        return
    x, y = _pair(args.point, "point")
    cand = CycleCandidate(x, y, float("nan"), float("nan"), False, False, False)
    try:
        vc = verify_cycle(cfg.saddle, cfg.center, cand, cfg.integrator)
    except Rejected as rej:
        _emit(args, {"x": x, "y": y, "status": "rejected", "reason": rej.reason,
                     "detail": rej.detail})
        return
    except Exception as exc:
        raise StageError("verify", exc) from exc
    _emit(args, {"x": x, "y": y, "status": "verified",
                 "period_estimate": vc.period_estimate, "direction": vc.direction,
                 "saddle_arc": {"endpoint": list(vc.plus_arc.endpoint),
                                "integral_drift": vc.plus_arc.integral_drift},
                 "center_arc": {"endpoint": list(vc.minus_arc.endpoint),
                                "integral_drift": vc.minus_arc.integral_drift}})


def _cmd_oracle(args):
    cfg = _resolve_config(args)
    rng = _pair(args.x_range, "range") if args.x_range else None
    if rng is not None and not 0 < rng[0] < rng[1]:
        raise InputError("range: need 0 < lo < hi")
    if args.samples < 2:
        raise InputError("samples: need at least 2")
    report = run(cfg, oracle=True, oracle_range=rng, oracle_samples=args.samples,
                 timings=args.timings)
    _emit(args, report.to_dict())


def _cmd_plot(args):
    cfg = _resolve_config(args)
    try:
        window = parse_window(args.window) if args.window else None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.glyphs < 0:
        raise InputError("glyphs: need a nonnegative grid size")
    report = run(cfg)
    try:
        cycles = verified_cycles(cfg, report)
    except Exception as exc:
        raise StageError("plot", exc) from exc
    svg = render_svg(cycles, window, saddle=cfg.saddle, center=cfg.center,
                     glyphs=args.glyphs, title=cfg.name)
    _write(args, svg)


def _cmd_paper(args):
    if args.config:
        raise InputError("paper-examples takes --case, not --config")
    if args.case:
        _emit(args, run(builtin_config(args.case), timings=args.timings).to_dict())
        return
    _emit(args, {case: run(builtin_config(case), timings=args.timings).to_dict()
                 for case in BUILTIN_CASES})


COMMANDS = {
    "bound": _cmd_bound,
    "closing-polys": _cmd_closing,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "plot": _cmd_plot,
    "paper-examples": _cmd_paper,
}


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except (ValidationError, ParseError, InputError) as exc:
        print(f"cycles: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"cycles: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StageError as exc:
        print(f"cycles: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
