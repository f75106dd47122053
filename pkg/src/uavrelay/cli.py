"""Command line entry point: ``uavrelay {cycle,sweep,optimize,figure,validate}``.

Exit status is 0 on success, 1 on a runtime error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import load_config
from .exceptions import ConfigError, InvalidParameterError, UavRelayError

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _seeds(text: str) -> tuple:
    """``"0-19"`` or ``"1,4,9"``."""
    try:
        if "-" in text.strip("-"):
            a, b = text.split("-", 1)
            return tuple(range(int(a), int(b) + 1))
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _floats(text: str) -> tuple:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uavrelay", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="flat key = value file; defaults to $UAVRELAY_CONFIG")
    p.add_argument("--strict", action="store_true", help="require explicit values for invented defaults")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cycle", help="run one relay cycle and write its report")
    c.add_argument("--scenario", choices=("A", "B"), default="A")
    c.add_argument("--seed", type=int)
    c.add_argument("--out", help="CSV path (per-user rows); a JSON report is written alongside")

    s = sub.add_parser("sweep", help="average cycle metrics over seeds along one parameter")
    s.add_argument("--param", required=True, help="dotted key, e.g. mission.p_t_users")
    s.add_argument("--values", required=True, type=_floats)
    s.add_argument("--seeds", type=_seeds, default=tuple(range(20)))
    s.add_argument("--scenarios", default="A,B")
    s.add_argument("--columns", default="t_total,e_total")
    s.add_argument("--name", default="sweep")
    s.add_argument("--out")

    o = sub.add_parser("optimize", help="solve the splitting program three ways and check KKT")
    o.add_argument("--seed", type=int)
    o.add_argument("--resolution", type=int, default=1001)
    o.add_argument("--g1", type=float, help="synthetic problem: G1 (with --e-th and --e-c)")
    o.add_argument("--e-th", type=float)
    o.add_argument("--e-c", type=float)
    o.add_argument("--out", help="JSON path")

    f = sub.add_parser("figure", help="write the table behind one figure (2-8)")
    f.add_argument("n", type=int)
    f.add_argument("--seeds", type=_seeds, default=tuple(range(20)))
    f.add_argument("--out")

    v = sub.add_parser("validate", help="run the invariant suite")
    v.add_argument("--seed", type=int, default=0)
    return p


def _emit(text: str, out) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_cycle(args, cfg) -> int:
    from .experiments import ResultTable
    from .scenario import run_cycle

    if args.seed is not None:
        cfg = cfg.override(**{"mission.seed": args.seed})
    rep = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, args.scenario, variant=cfg.power_variant)
    rows = tuple((u.slant_range, u.rate, u.collection_time, u.harvested_energy) for u in rep.per_user)
    summary = rep.summary()
    meta = {"config_hash": cfg.config_hash(), "seed": cfg.mission.seed, "summary": summary}
    table = ResultTable(("slant_range", "rate", "collection_time", "harvested_energy"), rows, meta)
    if args.out:
        table.write(args.out)
    else:
        sys.stdout.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _cmd_sweep(args, cfg) -> int:
    from .experiments import ExperimentSpec, run_sweep

    spec = ExperimentSpec(args.name, args.param, args.values, args.seeds,
                          tuple(s.strip() for s in args.scenarios.split(",") if s.strip()),
                          tuple(c.strip() for c in args.columns.split(",") if c.strip()))
    table = run_sweep(spec, cfg)
    if args.out:
        table.write(args.out)
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_optimize(args, cfg) -> int:
    from .optimizer import (OptimizationProblem, build_problem, closed_form_tightness_gap, kkt_residuals,
                            solve_analytic, solve_grid, solve_paper_closed_form)
    from .exceptions import DivisionUndefinedError

    synthetic = (args.g1, args.e_th, args.e_c)
    if any(x is not None for x in synthetic):
        if any(x is None for x in synthetic):
            raise UsageError("--g1, --e-th and --e-c go together")
        problem = OptimizationProblem.from_constants(args.g1, args.e_th, args.e_c)
    else:
        if args.seed is not None:
            cfg = cfg.override(**{"mission.seed": args.seed})
        dep = cfg.mission.deploy()
        problem = build_problem(cfg.mission, cfg.channel, dep, cfg.swipt, cfg.aero, cfg.power_variant)
    if args.resolution < 2:
        raise UsageError("--resolution must be >= 2")

    out = {"problem": {"g1": problem.g1, "g2": problem.g2, "e_threshold": problem.e_threshold,
                       "users": len(problem.per_user_gains)}}
    try:
        out["paper_closed_form"] = solve_paper_closed_form(problem).to_dict()
    except DivisionUndefinedError as exc:
        out["paper_closed_form"] = {"error": str(exc)}
    grid = solve_grid(problem, args.resolution)
    analytic = solve_analytic(problem)
    out["grid"] = grid.to_dict()
    out["analytic"] = analytic.to_dict()
    out["kkt_analytic"] = kkt_residuals(problem, analytic).to_dict() if analytic.feasible else None
    out["closed_form_tightness_gap"] = closed_form_tightness_gap(problem)
    _emit(json.dumps(out, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_figure(args, cfg) -> int:
    from .experiments import FIGURES, reproduce_figure

    if args.n not in FIGURES:
        raise UsageError(f"figure number must be one of {FIGURES}")
    table = reproduce_figure(args.n, cfg, args.out, args.seeds)
    if not args.out:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_validate(args, cfg) -> int:
    from .validate import run_all

    results = run_all(cfg, args.seed)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_RUNTIME


COMMANDS = {"cycle": _cmd_cycle, "sweep": _cmd_sweep, "optimize": _cmd_optimize,
            "figure": _cmd_figure, "validate": _cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config, strict=args.strict)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, InvalidParameterError) as exc:
        print(f"uavrelay: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UavRelayError as exc:
        print(f"uavrelay: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"uavrelay: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
