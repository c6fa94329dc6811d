"""Command-line front end: ``ladm {solve,table,grid,residual}``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field

from . import oracle
from .series import to_tree
from .solver import DEFAULT_BETA, DEFAULT_TERMS, kundu_eckhaus, residual_orders, run

log = logging.getLogger("ladm")

EXIT_OK, EXIT_INTERNAL, EXIT_CONFIG = 0, 1, 2
ANNIHILATION_TOL = 1e-9


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    beta: float = DEFAULT_BETA
    harmonic: int = 1
    terms: int = DEFAULT_TERMS
    t_values: list[float] = field(default_factory=lambda: [1.0])
    x_start: float = 0.5
    x_step: float = 0.5
    x_count: int = 10
    output_format: str = "csv"
    output_path: str | None = None

    def validate(self) -> None:
        if not math.isfinite(self.beta) or self.beta == 0:
            raise ConfigError(f"--beta must be finite and nonzero, got {self.beta}")
        if self.terms < 0:
            raise ConfigError(f"--terms must be >= 0, got {self.terms}")
        if self.x_count < 1:
            raise ConfigError(f"--x-count must be >= 1, got {self.x_count}")
        if self.x_count > 1 and self.x_step == 0:
            raise ConfigError("--x-step must be nonzero when --x-count > 1")
        if not all(math.isfinite(v) for v in [self.x_start, self.x_step, *self.t_values]):
            raise ConfigError("grid values must be finite")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def xs(self) -> list[float]:
        return [self.x_start + i * self.x_step for i in range(self.x_count)]


def _solve_payload(cfg: RunConfig) -> dict:
    r = run(kundu_eckhaus(), cfg.beta, cfg.harmonic, cfg.terms)
    return {
        "beta": cfg.beta,
        "harmonic": cfg.harmonic,
        "terms": cfg.terms,
        "iterates": [{"n": n, "series": to_tree(u)} for n, u in enumerate(r.iterates)],
        "truncated": to_tree(r.truncated),
    }


def cmd_solve(cfg: RunConfig) -> str:
    payload = _solve_payload(cfg)
    if cfg.output_format == "json":
        return json.dumps(payload, indent=2) + "\n"
    lines = ["n,power_t,k,re,im"]
    entries = [(str(it["n"]), it["series"]) for it in payload["iterates"]]
    entries.append(("sum", payload["truncated"]))
    for label, tree in entries:
        for block in tree:
            for term in block["terms"]:
                lines.append(f"{label},{block['power_t']},{term['k']},{oracle.fmt(term['re'])},{oracle.fmt(term['im'])}")
    return "\n".join(lines) + "\n"


def _comparison_rows(cfg: RunConfig) -> list[oracle.ComparisonRow]:
    if cfg.harmonic != 1:
        raise ConfigError("the closed-form comparison is defined for --harmonic 1 only")
    r = run(kundu_eckhaus(), cfg.beta, cfg.harmonic, cfg.terms)
    sol = oracle.ExactSolution(cfg.beta)
    rows = []
    for t in cfg.t_values:
        rows.extend(oracle.compare_grid(r, sol, cfg.xs(), t))
    return rows


def _emit_rows(rows: list[oracle.ComparisonRow], columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: row.values()[c] for c in columns} for row in rows], indent=2) + "\n"
    return oracle.rows_to_csv(rows, columns)


def cmd_table(cfg: RunConfig, part: str) -> str:
    if len(cfg.t_values) != 1:
        raise ConfigError("table takes exactly one --t value")
    if part not in oracle.PART_COLUMNS:
        raise ConfigError(f"--part must be 'real' or 'imag', got {part!r}")
    return _emit_rows(_comparison_rows(cfg), oracle.PART_COLUMNS[part], cfg.output_format)


def cmd_grid(cfg: RunConfig) -> str:
    if not cfg.t_values:
        raise ConfigError("grid needs at least one --t value")
    return _emit_rows(_comparison_rows(cfg), oracle.CSV_COLUMNS, cfg.output_format)


def residual_report(cfg: RunConfig) -> dict:
    r = run(kundu_eckhaus(), cfg.beta, cfg.harmonic, cfg.terms)
    orders = residual_orders(kundu_eckhaus(), r.truncated)
    return {
        "beta": cfg.beta,
        "harmonic": cfg.harmonic,
        "terms": cfg.terms,
        "tolerance": ANNIHILATION_TOL,
        "orders": [
            {"order": m, "max_abs": v, "annihilated": v < ANNIHILATION_TOL}
            for m, v in enumerate(orders)
        ],
    }


def cmd_residual(cfg: RunConfig) -> str:
    report = residual_report(cfg)
    if cfg.output_format == "csv":
        lines = ["order,max_abs"] + [f"{o['order']},{oracle.fmt(o['max_abs'])}" for o in report["orders"]]
        return "\n".join(lines) + "\n"
    return json.dumps(report, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=float, default=DEFAULT_BETA, help="initial amplitude (default 2**(1/16))")
    common.add_argument("--harmonic", type=int, default=1, help="initial wavenumber")
    common.add_argument("--terms", type=int, default=DEFAULT_TERMS, help="number of correction terms k")
    common.add_argument("--t", type=float, action="append", dest="t_values", help="time value; repeatable")
    common.add_argument("--x-start", type=float, default=0.5)
    common.add_argument("--x-step", type=float, default=0.5)
    common.add_argument("--x-count", type=int, default=10)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ladm", description="Laplace-Adomian decomposition for the Kundu-Eckhaus equation")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common], help="dump iterates u_0..u_k")
    p.add_argument("--emit", choices=("csv", "json"), default="json")
    p = sub.add_parser("table", parents=[common], help="LADM vs closed form at one time")
    p.add_argument("--part", choices=("real", "imag"), default="real")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p = sub.add_parser("grid", parents=[common], help="full comparison over an (x, t) grid")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p = sub.add_parser("residual", parents=[common], help="PDE residual of the truncation per power of t")
    p.add_argument("--emit", choices=("csv", "json"), default="json")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        beta=args.beta,
        harmonic=args.harmonic,
        terms=args.terms,
        t_values=args.t_values if args.t_values is not None else [1.0],
        x_start=args.x_start,
        x_step=args.x_step,
        x_count=args.x_count,
        output_format=args.emit,
        output_path=args.out,
    )
    cfg.validate()
    return cfg


def execute(args: argparse.Namespace) -> str:
    cfg = config_from_args(args)
    if args.command == "solve":
        return cmd_solve(cfg)
    if args.command == "table":
        return cmd_table(cfg, args.part)
    if args.command == "grid":
        return cmd_grid(cfg)
    return cmd_residual(cfg)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        text = execute(args)
    except (ConfigError, oracle.BranchCutError) as exc:
        print(f"ladm: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
