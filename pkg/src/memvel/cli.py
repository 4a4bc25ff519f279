"""Command-line front end: ``memvel eval | sweep | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 numerical failure (quadrature did not converge).

A JSON config file (``--config``) may set any RunConfig field; flags given
on the command line override it.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import ConvergenceError, ExprSyntaxError, MemvelError
from .operator import velocity_grid
from .quadrature import QuadratureSpec
from .report import SCHEMA_VERSION, VerificationReport, _json_number
from .schedule import make_schedule
from .suites import SUITES, run_suite
from .trajectory import make_trajectory

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CSV_COLUMNS = ("t", "value", "coefficient", "integral", "quad_err")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = "eval"
    x_expr: Optional[str] = None
    alpha_expr: Optional[str] = None
    beta_expr: Optional[str] = None
    T: Optional[float] = None
    times: object = None  # list of floats or {"start", "stop", "count"}
    quadrature: dict = field(default_factory=dict)
    verify_suite: List[str] = field(default_factory=list)
    output_path: Optional[str] = None
    output_format: Optional[str] = None
    seed: int = 0

    def spec(self) -> QuadratureSpec:
        unknown = set(self.quadrature) - {f.name for f in fields(QuadratureSpec)}
        if unknown:
            raise UsageError(f"unknown quadrature fields {sorted(unknown)}")
        return QuadratureSpec(**self.quadrature)

    def time_list(self) -> List[float]:
        times = self.times
        if times is None:
            raise UsageError("no evaluation times given")
        if isinstance(times, dict):
            try:
                start, stop, count = float(times["start"]), float(times["stop"]), int(times["count"])
            except (KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"times grid needs numeric start, stop, count: {exc}") from None
            if count < 1:
                raise UsageError("times grid count must be >= 1")
            return [float(v) for v in np.linspace(start, stop, count)]
        out = [float(v) for v in times]
        if not out:
            raise UsageError("no evaluation times given")
        return out


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config fields {sorted(unknown)} in {path!r}")
    return data


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="memvel", description="Evaluate and verify the memory-weighted velocity operator.")
    parser.add_argument("--version", action="version", version=f"memvel {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--x", dest="x_expr", help="trajectory x(t)")
    common.add_argument("--alpha", dest="alpha_expr", help="memory exponent alpha(t)")
    common.add_argument("--beta", dest="beta_expr", help="memory exponent beta(t)")
    common.add_argument("--T", type=float, help="horizon")
    common.add_argument("--output", dest="output_path", help="write here instead of stdout")
    common.add_argument("--format", dest="output_format", choices=("csv", "json"))
    q = common.add_argument_group("quadrature")
    q.add_argument("--scheme", choices=("jacobi", "graded_composite"))
    q.add_argument("--order", type=int)
    q.add_argument("--panels", type=int)
    q.add_argument("--grading", dest="grading_exponent", type=float)
    q.add_argument("--tol", dest="target_rel_err", type=float)

    ev = sub.add_parser("eval", parents=[common], help="evaluate V at one or more times")
    ev.add_argument("--t", dest="t_list", type=float, action="append", help="evaluation time (repeatable)")

    sw = sub.add_parser("sweep", parents=[common], help="evaluate V over a grid of times")
    sw.add_argument("--times", help="comma-separated list of times")
    sw.add_argument("--start", type=float)
    sw.add_argument("--stop", type=float)
    sw.add_argument("--count", type=int)

    ve = sub.add_parser("verify", parents=[common], help="run verification suites")
    ve.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or 'all' (repeatable)")
    ve.add_argument("--seed", type=int)
    return parser


def resolve_config(args) -> RunConfig:
    data = load_config(args.config) if args.config else {}
    data["command"] = args.command
    for name in ("x_expr", "alpha_expr", "beta_expr", "T", "output_path", "output_format"):
        if getattr(args, name) is not None:
            data[name] = getattr(args, name)
    quad = dict(data.get("quadrature") or {})
    for name in ("scheme", "order", "panels", "grading_exponent", "target_rel_err"):
        if getattr(args, name) is not None:
            quad[name] = getattr(args, name)
    data["quadrature"] = quad

    if args.command == "eval" and args.t_list:
        data["times"] = args.t_list
    if args.command == "sweep":
        if args.times is not None:
            try:
                data["times"] = [float(v) for v in args.times.split(",") if v.strip()]
            except ValueError:
                raise UsageError(f"--times must be comma-separated numbers, got {args.times!r}") from None
        elif any(v is not None for v in (args.start, args.stop, args.count)):
            grid = dict(data["times"]) if isinstance(data.get("times"), dict) else {}
            for key in ("start", "stop", "count"):
                if getattr(args, key) is not None:
                    grid[key] = getattr(args, key)
            data["times"] = grid
    if args.command == "verify":
        if args.suite:
            data["verify_suite"] = args.suite
        if args.seed is not None:
            data["seed"] = args.seed
    if isinstance(data.get("verify_suite"), str):
        data["verify_suite"] = [data["verify_suite"]]
    return RunConfig(**data)


def _suite_names(requested) -> List[str]:
    names = []
    for item in requested or ["all"]:
        for name in str(item).split(","):
            name = name.strip()
            if name == "all":
                names.extend(SUITES)
            elif name in SUITES:
                names.append(name)
            else:
                raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or 'all'")
    # keep the first occurrence, in the canonical order
    return [s for s in SUITES if s in names]


def _environment(spec: QuadratureSpec) -> dict:
    return {"tool": "memvel", "version": __version__, "quadrature": spec.to_dict()}


def _fmt(v) -> str:
    return format(float(v), ".17g")


def emit_csv(rows, path=None, columns=CSV_COLUMNS):
    """Header plus one comma-separated line per row, '\\n' terminated."""
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(r[c]) for c in columns) for r in rows)
    _write("\n".join(lines) + "\n", path)


def emit_json(payload, path=None):
    _write(json.dumps(payload, indent=2, allow_nan=False) + "\n", path)


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None


def _require(cfg: RunConfig, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"missing required setting(s): {', '.join(missing)}")


def _evaluate(cfg: RunConfig) -> int:
    _require(cfg, "x_expr", "alpha_expr", "beta_expr", "T")
    spec = cfg.spec()
    T = float(cfg.T)
    x = make_trajectory(cfg.x_expr, T)
    alpha = make_schedule(cfg.alpha_expr, T)
    beta = make_schedule(cfg.beta_expr, T)
    times = sorted(cfg.time_list())
    grid = velocity_grid(x, alpha, beta, times, spec)

    rows = [
        {"t": t, "value": b.value, "coefficient": b.coefficient, "integral": b.integral, "quad_err": b.quad_err}
        for t, b in grid.points
    ]
    fmt = cfg.output_format or ("json" if cfg.command == "eval" else "csv")
    if fmt == "csv":
        emit_csv(rows, cfg.output_path)
    else:
        payload = {
            "schema": SCHEMA_VERSION,
            "command": cfg.command,
            "inputs": {"x": cfg.x_expr, "alpha": str(cfg.alpha_expr), "beta": str(cfg.beta_expr), "T": T},
            "results": [{k: _json_number(v) for k, v in r.items()} for r in rows],
            "failures": [{"t": t, "error": str(e)} for t, e in grid.failures],
            "environment": _environment(spec),
        }
        if len(times) == 1 and len(rows) == 1:
            payload["value"] = _json_number(rows[0]["value"])
        emit_json(payload, cfg.output_path)

    for t, exc in grid.failures:
        print(f"memvel: t={t!r}: {exc}", file=sys.stderr)
    if any(isinstance(e, ConvergenceError) for _, e in grid.failures):
        return EXIT_NUMERIC
    if grid.failures:
        return EXIT_USAGE
    return EXIT_OK


def _suite_kwargs(name, cfg: RunConfig):
    kw = {}
    if name in ("linearity", "kernel-mass", "weighted-bound", "appendix"):
        kw["seed"] = cfg.seed
    if cfg.T is not None:
        if name in ("linearity", "kernel-mass", "recovery", "midpoint", "dependence"):
            kw["T"] = float(cfg.T)
        elif name == "weighted-bound":
            kw["horizons"] = (float(cfg.T),)
    if cfg.x_expr is not None and name in ("recovery", "midpoint", "dependence"):
        kw["x_src"] = cfg.x_expr
    if name not in ("kernel-mass", "midpoint", "appendix"):
        kw["spec"] = cfg.spec()
    return kw


def _verify(cfg: RunConfig) -> int:
    names = _suite_names(cfg.verify_suite)
    spec = cfg.spec()
    combined = VerificationReport("+".join(names), environment=_environment(spec))
    for name in names:
        report = run_suite(name, **_suite_kwargs(name, cfg))
        for check in report.checks:
            if len(names) > 1:
                check.name = f"{name}/{check.name}"
            combined.add(check)
        for line in report.summary_lines():
            print(line, file=sys.stderr)

    if (cfg.output_format or "json") == "csv":
        rows = [
            ",".join([c.name, c.status, _fmt(c.worst_slack), "" if c.witness_t is None else _fmt(c.witness_t)])
            for c in combined.checks
        ]
        _write("\n".join(["check,status,worst_slack,witness_t", *rows]) + "\n", cfg.output_path)
    else:
        emit_json(combined.to_dict(), cfg.output_path)
    return EXIT_OK if combined.passed else EXIT_FAIL


def run(argv: Sequence[str]) -> int:
    """Run one command; returns the exit code instead of exiting."""
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("memvel: a command is required (eval, sweep or verify)")
        cfg = resolve_config(args)
        if cfg.T is not None and not float(cfg.T) > 0:
            raise UsageError(f"T must be positive, got {cfg.T!r}")
        if cfg.command == "verify":
            return _verify(cfg)
        return _evaluate(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MemvelError, TypeError, ValueError) as exc:
        # parse errors, domain errors and bad schedule ranges are configuration problems
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
