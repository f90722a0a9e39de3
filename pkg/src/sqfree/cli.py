"""Command line entry point ``sqfree``.

Exit codes: 0 ok, 2 usage, 3 budget exceeded, 4 internal consistency failure.
Errors are printed to stderr as one JSON object with module, operation and reason.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from sqfree.errors import BudgetExceeded, ConsistencyError

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CONSISTENCY = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    budget: Optional[int] = None
    state_budget: int = 10**6
    precision: int = 40
    threads: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        for name in ("budget", "state_budget", "precision", "threads"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise UsageError(f"{name} must be positive")


class UsageError(ValueError):
    pass


class CommandError(Exception):
    def __init__(self, module, operation, reason, code):
        super().__init__(reason)
        self.module, self.operation, self.reason, self.code = module, operation, reason, code


# ---------------------------------------------------------------- output helpers

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def csv_text(rows: list, columns: Optional[list] = None) -> str:
    buf = io.StringIO()
    columns = columns or (list(rows[0]) if rows else [])
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _fmt(out: Optional[str], explicit: Optional[str] = None) -> str:
    if explicit:
        return explicit
    return "csv" if out and out.endswith(".csv") else "json"


# ---------------------------------------------------------------- commands

def cmd_count(cfg: RunConfig) -> None:
    from sqfree.enumerate import count_by_letter, count_lsf, count_square_free

    p = cfg.params
    fmt = _fmt(cfg.out, p.get("format"))
    if p.get("by_letter"):
        if p.get("ell") is not None:
            raise UsageError("--by-letter counts fully square-free words; drop --ell")
        table = count_by_letter(p["n"], budget=cfg.budget, threads=cfg.threads)
        if fmt == "csv":
            rows = [{"n": n, "k": k, "count": str(c)}
                    for n, row in enumerate(table.rows) for k, c in enumerate(row) if c]
            emit(csv_text(rows, ["n", "k", "count"]), cfg.out)
        else:
            emit(dumps(table.to_json()), cfg.out)
        return
    if p.get("ell") is None:
        series = count_square_free(p["n"], budget=cfg.budget, threads=cfg.threads)
    else:
        series = count_lsf(p["ell"], p["n"], budget=cfg.budget, threads=cfg.threads)
    if fmt == "csv":
        emit(csv_text([{"n": n, "count": str(v)} for n, v in enumerate(series.values)],
                      ["n", "count"]), cfg.out)
    else:
        emit(dumps(series.to_json()), cfg.out)


def cmd_genfun(cfg: RunConfig) -> None:
    from sqfree.genfun import rational_gf

    gf = rational_gf(cfg.params["ell"], max_states=cfg.state_budget)
    if cfg.params.get("text"):
        emit(gf.to_text(), cfg.params["text"])
    if cfg.out or not cfg.params.get("text"):
        emit(dumps(gf.to_json()), cfg.out)


def cmd_poles(cfg: RunConfig) -> None:
    from sqfree.figures import poles_svg
    from sqfree.genfun import rational_gf
    from sqfree.roots import dominant_real_root, pole_zero_report

    gf = rational_gf(cfg.params["ell"], max_states=cfg.state_budget)
    ps = pole_zero_report(gf, cfg.precision, seed=cfg.seed)
    dom = dominant_real_root(gf.denominator, min(cfg.precision, 30), ell=gf.ell)
    data = ps.to_json()
    data["x_c"] = dom.decimal(9)
    data["smallest_modulus"] = dom.smallest_modulus
    emit(dumps(data), cfg.out)
    if cfg.params.get("svg"):
        emit(poles_svg([ps]), cfg.params["svg"])


def cmd_triple(cfg: RunConfig) -> None:
    from sqfree.morphism import (HeterogeneousCounts, load_triple, pf_frequencies,
                                 substitution_matrix, verify_triple)

    p = cfg.params
    path = _fixture_path(p["fixture"])
    triple, _ = load_triple(path)
    if p["action"] == "verify":
        cert = verify_triple(triple, p.get("depth") or 3)
        out = {"name": triple.name, "k": triple.k, "m": triple.m, **cert.to_json()}
    else:
        try:
            M = substitution_matrix(triple)
        except HeterogeneousCounts as exc:
            raise CommandError("morphism", "substitution_matrix", str(exc), EXIT_USAGE)
        freqs = pf_frequencies(M)
        out = {"name": triple.name, "matrix": [list(r) for r in M.rows],
               "frequencies": {x: str(f) for x, f in zip("abc", freqs)}}
    emit(dumps(out), cfg.out)


def _fixture_path(name: str) -> Path:
    from sqfree.morphism import FIXTURE_DIR

    path = Path(name)
    if path.exists():
        return path
    for cand in (FIXTURE_DIR / name, FIXTURE_DIR / f"{name}.json"):
        if cand.exists():
            return cand
    raise UsageError(f"no fixture file {name!r}")


def cmd_thermo(cfg: RunConfig) -> None:
    from sqfree.enumerate import count_by_letter
    from sqfree.figures import phase_svg
    from sqfree.thermo import (critical_curve, default_eps_grid, entropy_curve, phase_q_grid,
                               thermo_table)

    p = cfg.params
    n = p["n"]
    if n < 1:
        raise UsageError("--n must be at least 1")
    table = count_by_letter(n, budget=cfg.budget, threads=cfg.threads)
    kind = p.get("curve", "free-energy")
    fmt = _fmt(cfg.out, p.get("format"))
    if p.get("svg") and kind != "critical":
        raise UsageError("--svg is only available for --curve critical")
    if kind == "free-energy":
        rows = thermo_table(table, [n]).to_rows()
    elif kind == "critical":
        curve = critical_curve(table, phase_q_grid(), p.get("estimator", "dlog"))
        rows = curve.to_rows()
        if p.get("svg"):
            emit(phase_svg(curve), p["svg"])
    elif kind == "entropy":
        rows = entropy_curve(table, default_eps_grid(), n).to_rows()
    else:
        raise UsageError(f"unknown curve {kind!r}")
    emit(csv_text(rows) if fmt == "csv" else dumps(rows), cfg.out)


def cmd_analyze(cfg: RunConfig) -> None:
    from sqfree.analysis import InsufficientApproximants, pooled_estimate
    from sqfree.enumerate import CountSeries

    p = cfg.params
    try:
        data = json.loads(Path(p["input"]).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {p['input']}: {exc}")
    if "rows" in data:
        values = [sum(int(v) for v in r) for r in data["rows"]]
    else:
        values = CountSeries.from_json(data).values
    try:
        est = pooled_estimate(values, p.get("family", "diag2"))
    except InsufficientApproximants as exc:
        raise CommandError("analysis", "pooled_estimate", str(exc), EXIT_USAGE)
    emit(dumps({"n_terms": len(values), **est.to_json()}), cfg.out)


def cmd_extent(cfg: RunConfig) -> None:
    from sqfree.enumerate import letter_extent

    rows = []
    for k in range(cfg.params["k"] + 1):
        e = letter_extent(k, budget=cfg.budget)
        rows.append({"k": k, "n_min": e.n_min, "n_max": e.n_max,
                     "lower_frequency_bound": None if e.lower_frequency_bound is None
                     else str(e.lower_frequency_bound),
                     "upper_frequency_bound": None if e.upper_frequency_bound is None
                     else str(e.upper_frequency_bound)})
    emit(dumps(rows), cfg.out)


def cmd_reproduce(cfg: RunConfig) -> None:
    from sqfree.reproduce import reproduce_desk

    if cfg.params.get("scale", "desk") != "desk":
        raise UsageError("only --scale desk is supported")
    reproduce_desk(Path(cfg.out or "reproduce"), threads=cfg.threads, budget=cfg.budget,
                   seed=cfg.seed)


COMMANDS = {"count": cmd_count, "genfun": cmd_genfun, "poles": cmd_poles, "triple": cmd_triple,
            "thermo": cmd_thermo, "analyze": cmd_analyze, "extent": cmd_extent,
            "reproduce": cmd_reproduce}

MODULE_OF = {"count": "enumerate", "genfun": "genfun", "poles": "roots", "triple": "morphism",
             "thermo": "thermo", "analyze": "analysis", "extent": "enumerate",
             "reproduce": "cli"}


def run(cfg: RunConfig) -> int:
    """Dispatch one command; returns the process exit status."""
    from sqfree.genfun import NoRecurrence
    from sqfree.roots import RootFindingError

    module = MODULE_OF.get(cfg.command, "cli")
    try:
        if cfg.command not in COMMANDS:
            raise UsageError(f"unknown command {cfg.command!r}")
        COMMANDS[cfg.command](cfg)
        return EXIT_OK
    except CommandError as exc:
        return _fail(exc.module, exc.operation, exc.reason, exc.code)
    except UsageError as exc:
        return _fail(module, cfg.command, str(exc), EXIT_USAGE)
    except BudgetExceeded as exc:
        return _fail(module, cfg.command, str(exc), EXIT_BUDGET)
    except (ConsistencyError, NoRecurrence, RootFindingError) as exc:
        return _fail(module, cfg.command, f"{type(exc).__name__}: {exc}", EXIT_CONSISTENCY)
    except ValueError as exc:
        return _fail(module, cfg.command, str(exc), EXIT_USAGE)


def _fail(module, operation, reason, code) -> int:
    sys.stderr.write(json.dumps({"module": module, "operation": operation, "reason": reason,
                                 "exit_code": code}) + "\n")
    return code


# ---------------------------------------------------------------- argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("cli", "parse_args", message, EXIT_USAGE)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads")
    common.add_argument("--budget", type=int, default=None,
                        help="DFS node ceiling (default $SQFREE_BUDGET or 1e9)")
    common.add_argument("--seed", type=int, default=0, help="root finder start perturbation")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    parser = _Parser(prog="sqfree", description="Square-free ternary words toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="count square-free words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, default=None, help="only forbid squares of period <= ell")
    p.add_argument("--by-letter", action="store_true", help="split counts by number of a's")
    p.add_argument("--format", choices=["json", "csv"], default=None)

    p = sub.add_parser("genfun", parents=[common], help="rational generating function S^(l)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--states", type=int, default=10**6, help="automaton state ceiling")
    p.add_argument("--text", default=None, help="also write a plain-text formula here")

    p = sub.add_parser("poles", parents=[common], help="poles and zeros of S^(l)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--precision", type=int, default=40, help="decimal digits")
    p.add_argument("--states", type=int, default=10**6)
    p.add_argument("--svg", default=None)

    p = sub.add_parser("triple", parents=[common], help="substitution triples")
    p.add_argument("action", choices=["verify", "freq"])
    p.add_argument("fixture", help="fixture file or bundled fixture name")
    p.add_argument("--depth", type=int, default=3, help="input length checked")

    p = sub.add_parser("thermo", parents=[common], help="free energy, critical curve, entropy")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--curve", choices=["free-energy", "critical", "entropy"],
                   default="free-energy")
    p.add_argument("--estimator", choices=["dlog", "finite"], default="dlog")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--svg", default=None)

    p = sub.add_parser("analyze", parents=[common], help="Dlog-Pade analysis of a count file")
    p.add_argument("--input", required=True)
    p.add_argument("--family", choices=["diag2", "diag1", "diag0"], default="diag2")

    p = sub.add_parser("extent", parents=[common], help="letter extents n_min(k), n_max(k)")
    p.add_argument("--k", type=int, required=True, help="largest k")

    p = sub.add_parser("reproduce", parents=[common], help="regenerate all desk-scale artefacts")
    p.add_argument("--scale", choices=["desk"], default="desk")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "threads", "budget", "seed", "out", "states", "precision"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(command=args.command, params=params, budget=args.budget,
                     state_budget=getattr(args, "states", 10**6),
                     precision=getattr(args, "precision", 40),
                     threads=args.threads, seed=args.seed, out=args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        return _fail("cli", args.command, str(exc), EXIT_USAGE)
    if cfg.budget is None and os.environ.get("SQFREE_BUDGET"):
        cfg.budget = int(os.environ["SQFREE_BUDGET"])
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
