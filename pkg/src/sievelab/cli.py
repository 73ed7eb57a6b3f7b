"""Command-line front end.

Subcommands:
  compare     run all three sieves on one instance, verify the cost
              identities, write per-(b, l) rows and a JSON summary
  sieve       run a single sieve and report totals and smooth entries
  montecarlo  estimate the probability that no prime l <= y carries a
              liftable multiple root
  enumerate   exact version of the same count over every monic
              polynomial mod l^2
  sweep       measured classical/improved ratios over many instances

Exit codes: 0 success, 1 statistical gate failed, 2 usage error,
3 a verified identity or internal invariant was violated.
"""

import argparse
import csv
import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .arith import InvariantViolation
from .engine import CLASSICAL, IMPROVED, TRIVIAL, SieveOutcome, sieve_classical, sieve_improved, sieve_trivial
from .experiments import (
    RandomModel,
    SweepInstance,
    enumerate_exact,
    monte_carlo,
    random_sieve_polynomial,
    ratio_sweep,
    run_comparison,
)
from .poly import SievePolynomial

log = logging.getLogger("sievelab")

EXIT_OK = 0
EXIT_GATE_FAILED = 1
EXIT_VIOLATION = 3

PAIR_COLUMNS = [
    "instance_id",
    "b",
    "l",
    "alg",
    "attempts_rational",
    "attempts_algebraic_simple",
    "attempts_algebraic_multiple",
    "C_exact",
    "D_exact",
    "correction",
    "C_asym",
    "D_asym",
]

SWEEP_COLUMNS = [
    "instance_id",
    "d",
    "m",
    "u",
    "y",
    "seed",
    "poly",
    "classical_total",
    "improved_total",
    "ratio",
    "correction_total",
    "correction_free",
]


@dataclass
class RunConfig:
    """One resolved run; a JSON config file supplies the same keys as the flags."""

    command: str
    poly: tuple[int, ...] | None = None
    random: bool = False
    d: int | None = None
    m: int | None = None
    u: int | None = None
    y: int | None = None
    l: int | None = None
    alg: str = IMPROVED
    trials: int | None = None
    instances: int | None = None
    seed: int = 0
    out: str | None = None
    format: str = "csv"
    sweep_instances: list[SweepInstance] | None = None


def format_rational(x: Fraction, places: int = 6) -> str:
    """Exact decimal rendering of a rational, no float detour."""
    scaled = x.numerator * 10**places
    quotient, remainder = divmod(scaled, x.denominator)
    if remainder * 2 >= x.denominator:
        quotient += 1
    sign = "-" if quotient < 0 else ""
    quotient = abs(quotient)
    return f"{sign}{quotient // 10**places}.{quotient % 10**places:0{places}d}"


def _parse_poly_text(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"polynomial must be comma-separated integers, got {text!r}") from None


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    """Flags win over config-file values; the file supplies the rest."""
    file_values: dict = {}
    if getattr(args, "config", None):
        try:
            file_values = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file {args.config}: {exc}")
        if not isinstance(file_values, dict):
            parser.error("config file must hold a JSON object")

    cfg = RunConfig(command=args.command)
    for name in ("poly", "random", "d", "m", "u", "y", "l", "alg", "trials", "instances", "seed", "out", "format"):
        value = getattr(args, name, None)
        unset = value is None or (name == "random" and value is False)
        if unset:
            value = file_values.get(name, None)
        if value is None:
            continue
        if name == "poly" and not isinstance(value, tuple):
            if isinstance(value, str):
                value = _parse_poly_text(value)
            elif isinstance(value, list):
                value = tuple(int(c) for c in value)
            else:
                parser.error("config key 'poly' must be a list of integers or a comma string")
        setattr(cfg, name, value)

    raw_instances = file_values.get("sweep_instances")
    if raw_instances is not None:
        try:
            cfg.sweep_instances = [
                SweepInstance(degree=int(r["d"]), m=int(r["m"]), u=int(r["u"]), y=int(r["y"]), seed=int(r["seed"]))
                for r in raw_instances
            ]
        except (KeyError, TypeError, ValueError) as exc:
            parser.error(f"bad sweep_instances entry in config: {exc}")
    return cfg


def _resolve_polynomial(cfg: RunConfig, parser: argparse.ArgumentParser) -> SievePolynomial:
    if cfg.poly is not None and cfg.random:
        parser.error("--poly and --random are mutually exclusive")
    if cfg.m is None:
        parser.error("this command needs --m")
    if cfg.poly is not None:
        if len(cfg.poly) < 3:
            parser.error("polynomial must have degree >= 2 (at least three coefficients c_0,...,c_d)")
        if cfg.poly[-1] != 1:
            parser.error("polynomial must be monic: the last coefficient c_d must be 1")
        try:
            return SievePolynomial(coefficients=cfg.poly, m=cfg.m)
        except ValueError as exc:
            parser.error(str(exc))
    if cfg.random:
        if cfg.d is None:
            parser.error("--random needs --d")
        return random_sieve_polynomial(cfg.d, cfg.m, random.Random(f"{cfg.seed}:poly"))
    parser.error("provide a polynomial with --poly or ask for one with --random")
    raise AssertionError("unreachable")


def _require(parser: argparse.ArgumentParser, cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            parser.error(f"this command needs --{name}")


def _out_dir(cfg: RunConfig) -> Path | None:
    if cfg.out is None:
        return None
    path = Path(cfg.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_rows(path_base: Path, name: str, fmt: str, columns: list[str], rows: list[dict]) -> None:
    if fmt == "json":
        payload = [{c: r[c] for c in columns} for r in rows]
        (path_base / f"{name}.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        with open(path_base / f"{name}.csv", "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=columns)
            writer.writeheader()
            writer.writerows(rows)


def _emit_summary(summary: dict, out: Path | None) -> None:
    text = json.dumps(summary, indent=2, sort_keys=True)
    print(text)
    if out is not None:
        (out / "summary.json").write_text(text + "\n")


def _ledger_phase(outcome: SieveOutcome, b: int, l: int, phase: str) -> int:
    return outcome.ledger.pair_phase(b, l, phase)


def _cmd_compare(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    _require(parser, cfg, "u", "y")
    f = _resolve_polynomial(cfg, parser)
    log.info("compare: poly=%s m=%d u=%d y=%d", f.coefficients, f.m, cfg.u, cfg.y)
    comp = run_comparison(f, cfg.u, cfg.y, include_trivial=True)
    report = comp.report

    rows = []
    for rec in report.rows:
        common = {
            "instance_id": 0,
            "b": rec.b,
            "l": rec.l,
            "C_exact": rec.c_exact,
            "D_exact": rec.d_exact,
            "correction": rec.correction,
            "C_asym": format_rational(rec.c_asym),
            "D_asym": format_rational(rec.d_asym),
        }
        for alg, outcome in ((CLASSICAL, comp.classical), (IMPROVED, comp.improved)):
            rows.append(
                {
                    **common,
                    "alg": alg,
                    "attempts_rational": _ledger_phase(outcome, rec.b, rec.l, "rational"),
                    "attempts_algebraic_simple": _ledger_phase(outcome, rec.b, rec.l, "algebraic_simple"),
                    "attempts_algebraic_multiple": _ledger_phase(outcome, rec.b, rec.l, "algebraic_multiple"),
                }
            )

    out = _out_dir(cfg)
    if out is not None:
        _write_rows(out, "pairs", cfg.format, PAIR_COLUMNS, rows)

    ratio = report.ratio
    summary = {
        "command": "compare",
        "poly": list(f.coefficients),
        "m": f.m,
        "u": cfg.u,
        "y": cfg.y,
        "identities_ok": report.ok,
        "tables_match": comp.tables_match,
        "mismatched_pairs": [list(p) for p in report.mismatches[:10]],
        "totals": {
            TRIVIAL: comp.trivial.ledger.grand_total(),
            CLASSICAL: report.classical_total,
            IMPROVED: report.improved_total,
        },
        "ratio_improved_over_classical": None if ratio is None else format_rational(ratio),
        "correction_total": report.correction_total,
        "pair_count": len(report.rows),
        "precompute": {
            "root_scan_evaluations": comp.tables.stats.root_scan_evaluations,
            "newton_lift_steps": comp.tables.stats.newton_lift_steps,
            "multiple_lift_tests": comp.tables.stats.multiple_lift_tests,
        },
    }
    _emit_summary(summary, out)
    if not (report.ok and comp.tables_match):
        log.error("identity violation: mismatches=%s stray=%s", report.mismatches[:10], report.stray_pairs[:10])
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_sieve(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    _require(parser, cfg, "u", "y")
    if cfg.alg not in (TRIVIAL, CLASSICAL, IMPROVED):
        parser.error(f"--alg must be one of {TRIVIAL}|{CLASSICAL}|{IMPROVED}, got {cfg.alg}")
    f = _resolve_polynomial(cfg, parser)
    runner = {TRIVIAL: sieve_trivial, CLASSICAL: sieve_classical, IMPROVED: sieve_improved}[cfg.alg]
    outcome = runner(f, cfg.u, cfg.y)

    smooth = []
    for b in range(1, cfg.u + 1):
        row = outcome.table.entries[b - 1]
        for i, val in enumerate(row):
            if val == 1 or val == -1:
                smooth.append({"b": b, "a": i - cfg.u, "residual": val})

    out = _out_dir(cfg)
    if out is not None:
        _write_rows(out, "smooth", cfg.format, ["b", "a", "residual"], smooth)

    ledger = outcome.ledger
    summary = {
        "command": "sieve",
        "alg": cfg.alg,
        "poly": list(f.coefficients),
        "m": f.m,
        "u": cfg.u,
        "y": cfg.y,
        "attempts_total": ledger.grand_total(),
        "attempts_by_phase": {
            phase: ledger.phase_total(phase)
            for phase in ("total", "rational", "algebraic_simple", "algebraic_multiple")
            if ledger.phase_total(phase)
        },
        "smooth_entries": len(smooth),
    }
    _emit_summary(summary, out)
    return EXIT_OK


def _cmd_montecarlo(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    _require(parser, cfg, "d", "y", "trials")
    if cfg.trials < 1:
        parser.error("--trials must be >= 1")
    try:
        model = RandomModel(degree=cfg.d, smooth_bound=cfg.y, seed=cfg.seed)
    except ValueError as exc:
        parser.error(str(exc))
    report = monte_carlo(model, cfg.trials)
    out = _out_dir(cfg)
    summary = {"command": "montecarlo", **report.to_dict()}
    _emit_summary(summary, out)
    log.info(
        "estimate %.4f +/- %.4f, reference product %.4f, limit %.4f",
        report.estimate, report.stderr, report.reference_product, report.zeta2_reciprocal,
    )
    return EXIT_OK if report.passes_gate else EXIT_GATE_FAILED


def _cmd_enumerate(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    _require(parser, cfg, "d", "l")
    try:
        count_bad, count_total, per_point = enumerate_exact(cfg.d, cfg.l)
    except ValueError as exc:
        parser.error(str(exc))
    print(f"{count_bad}/{count_total}")
    out = _out_dir(cfg)
    summary = {
        "command": "enumerate",
        "d": cfg.d,
        "l": cfg.l,
        "count_bad": count_bad,
        "count_total": count_total,
        "per_point_counts": list(per_point),
        "per_point_density": [format_rational(Fraction(n, count_total), 9) for n in per_point],
    }
    _emit_summary(summary, out)
    return EXIT_OK


def _build_sweep_instances(cfg: RunConfig, parser: argparse.ArgumentParser) -> list[SweepInstance]:
    if cfg.sweep_instances is not None:
        return cfg.sweep_instances
    if cfg.instances is None:
        parser.error("sweep needs --instances N or a config file with sweep_instances")
    instances = []
    for i in range(cfg.instances):
        rng = random.Random(f"{cfg.seed}:instance:{i}")
        instances.append(
            SweepInstance(
                degree=cfg.d if cfg.d is not None else rng.randint(2, 5),
                m=cfg.m if cfg.m is not None else rng.randint(5, 50),
                u=cfg.u if cfg.u is not None else rng.randint(50, 300),
                y=cfg.y if cfg.y is not None else rng.randint(10, 100),
                seed=rng.randrange(2**32),
            )
        )
    return instances


def _cmd_sweep(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    instances = _build_sweep_instances(cfg, parser)
    log.info("sweep over %d instances", len(instances))
    rows = ratio_sweep(instances)

    table = []
    for idx, row in enumerate(rows):
        inst = row.instance
        table.append(
            {
                "instance_id": idx,
                "d": inst.degree,
                "m": inst.m,
                "u": inst.u,
                "y": inst.y,
                "seed": inst.seed,
                "poly": ",".join(str(c) for c in row.coefficients),
                "classical_total": row.classical_total,
                "improved_total": row.improved_total,
                "ratio": "" if row.ratio is None else format_rational(row.ratio),
                "correction_total": row.correction_total,
                "correction_free": row.correction_free,
            }
        )
    out = _out_dir(cfg)
    if out is not None:
        _write_rows(out, "sweep", cfg.format, SWEEP_COLUMNS, table)

    classical_sum = sum(r.classical_total for r in rows)
    improved_sum = sum(r.improved_total for r in rows)
    aggregate = None if classical_sum == 0 else Fraction(improved_sum, classical_sum)
    summary = {
        "command": "sweep",
        "instances": len(rows),
        "classical_total": classical_sum,
        "improved_total": improved_sum,
        "aggregate_ratio": None if aggregate is None else format_rational(aggregate),
        "correction_free_instances": sum(1 for r in rows if r.correction_free),
    }
    _emit_summary(summary, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sievelab",
        description="Instrumented line sieving: exact division-attempt accounting and its brute-force checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, poly: bool = False) -> None:
        p.add_argument("--config", help="JSON file supplying any of the other flags")
        p.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
        p.add_argument("--out", help="directory for result files")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="row file format (default csv)")
        if poly:
            p.add_argument("--poly", type=_parse_poly_text, default=None,
                           help="comma-separated coefficients c_0,...,c_d with c_d = 1")
            p.add_argument("--random", action="store_true", help="draw a random polynomial instead")
            p.add_argument("--d", type=int, default=None, help="degree for --random")
            p.add_argument("--m", type=int, default=None, help="coefficient bound and rational-side root")

    p = sub.add_parser("compare", help="run all sieves, verify the cost identities")
    add_common(p, poly=True)
    p.add_argument("--u", type=int, default=None, help="table half-width")
    p.add_argument("--y", type=int, default=None, help="prime bound")

    p = sub.add_parser("sieve", help="run one sieve and report smooth entries")
    add_common(p, poly=True)
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--alg", choices=(TRIVIAL, CLASSICAL, IMPROVED), default=None)

    p = sub.add_parser("montecarlo", help="sampled probability that every prime is free of liftable multiple roots")
    add_common(p)
    p.add_argument("--d", type=int, default=None, help="polynomial degree")
    p.add_argument("--y", type=int, default=None, help="prime bound")
    p.add_argument("--trials", type=int, default=None)

    p = sub.add_parser("enumerate", help="exact lift-event counts over all monic polynomials mod l^2")
    add_common(p)
    p.add_argument("--d", type=int, default=None, help="polynomial degree")
    p.add_argument("--l", type=int, default=None, help="prime")

    p = sub.add_parser("sweep", help="classical/improved ratio across random instances")
    add_common(p)
    p.add_argument("--instances", type=int, default=None)
    p.add_argument("--d", type=int, default=None, help="pin the degree (otherwise sampled)")
    p.add_argument("--m", type=int, default=None, help="pin m (otherwise sampled)")
    p.add_argument("--u", type=int, default=None, help="pin u (otherwise sampled)")
    p.add_argument("--y", type=int, default=None, help="pin y (otherwise sampled)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    cfg = _merge_config(args, parser)
    if cfg.seed is None:
        cfg.seed = 0
    if cfg.format is None:
        cfg.format = "csv"
    if cfg.alg is None:
        cfg.alg = IMPROVED

    handlers = {
        "compare": _cmd_compare,
        "sieve": _cmd_sieve,
        "montecarlo": _cmd_montecarlo,
        "enumerate": _cmd_enumerate,
        "sweep": _cmd_sweep,
    }
    try:
        return handlers[cfg.command](cfg, parser)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
