"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails (for
``loctom`` also when the algebra is not a locally tomographic
self-composite), 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .algebra import DEFAULT_TOL, DescriptorError, Tolerances, parse_descriptor
from .loctom import is_locally_tomographic_self_composite
from .verify import CATALOG, VerificationReport, merge_reports, run_suite

COMMANDS = ("verify", "spectral", "lattice", "reconstruct", "loctom")
_SUITE_FOR = {"spectral": "spectral", "lattice": "lattice", "reconstruct": "reconstruction"}
_TOL_KEYS = ("eq_tol", "eig_cluster_gap", "zero_cutoff")


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    algebra: str
    samples: int = 100
    seed: int = 0
    tol: Tolerances = field(default_factory=lambda: DEFAULT_TOL)
    format: str = "text"


def parse_tol(text: str | None) -> Tolerances:
    """``1e-8`` sets ``eq_tol``; ``eq_tol=1e-8,zero_cutoff=1e-12`` sets named fields."""
    if text is None:
        return DEFAULT_TOL
    overrides = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise UsageError("empty --tol entry")
        if "=" in part:
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in _TOL_KEYS:
                raise UsageError(f"unknown tolerance {key!r}; expected one of {', '.join(_TOL_KEYS)}")
        else:
            key, value = "eq_tol", part
        try:
            overrides[key] = float(value)
        except ValueError:
            raise UsageError(f"tolerance {key} needs a number, got {value!r}") from None
    try:
        return DEFAULT_TOL.with_overrides(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqjordan",
        description="Verify sequential-product and Jordan-algebra properties on Euclidean Jordan algebras.",
        epilog="exit status: 0 pass, 1 failure (loctom: also a false verdict), 2 usage error",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--algebra", required=True, help="descriptor such as complex:2+spin:3")
    parser.add_argument("--samples", type=_natural, default=100)
    parser.add_argument("--seed", type=_natural, default=0)
    parser.add_argument("--tol", default=None, help="eq_tol value, or key=value list")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def parse_args(argv) -> CliConfig:
    ns = build_parser().parse_args(argv)
    desc = parse_descriptor(ns.algebra)
    return CliConfig(ns.command, str(desc), ns.samples, ns.seed, parse_tol(ns.tol), ns.format)


def _fmt(x) -> str:
    return f"{x:.3e}" if isinstance(x, float) else str(x)


def render_text(report: VerificationReport) -> str:
    rows = [(name, str(m["count"]), _fmt(m["max"])) for name, m in report.metrics.items()]
    failed = {f["predicate"] for f in report.failures}
    w = max([len("predicate")] + [len(r[0]) for r in rows])
    lines = [
        f"suite {report.suite}  algebra {report.algebra}  seed {report.seed}  samples {report.samples}",
        f"{'predicate':<{w}}  {'checks':>7}  {'max value':>10}  status",
        "-" * (w + 29),
    ]
    for name, count, mx in rows:
        lines.append(f"{name:<{w}}  {count:>7}  {mx:>10}  {'FAIL' if name in failed else 'ok'}")
    for f in report.failures[:20]:
        lines.append(f"failure: {f['predicate']} violation {_fmt(f['violation'])}")
    if len(report.failures) > 20:
        lines.append(f"... {len(report.failures) - 20} more failures (use --format json)")
    status = "PASS" if report.passed else "FAIL"
    if report.vacuous:
        status += " (vacuous: zero samples)"
    lines.append(f"{status}  elapsed {report.elapsed_s:.2f}s")
    return "\n".join(lines)


def _run(cfg: CliConfig) -> tuple[VerificationReport, str | None]:
    if cfg.command == "verify":
        reports = [run_suite(n, cfg.algebra, cfg.samples, cfg.seed, cfg.tol) for n in CATALOG.names()]
        return merge_reports(reports, "all"), None
    if cfg.command in _SUITE_FOR:
        return run_suite(_SUITE_FOR[cfg.command], cfg.algebra, cfg.samples, cfg.seed, cfg.tol), None
    report = run_suite("loctom", cfg.algebra, cfg.samples, cfg.seed, cfg.tol)
    verdict = is_locally_tomographic_self_composite(cfg.algebra)
    if not verdict.verdict:
        report.failures.append(
            {
                "predicate": "locally-tomographic-self-composite",
                "inputs": {"algebra": cfg.algebra},
                "violation": 1.0,
            }
        )
    report.extra["verdict"] = verdict.verdict
    report.extra["summands"] = [
        {
            "factor": s.factor,
            "rank": s.rank,
            "dim": s.dim,
            "rank_sq": s.rank_sq,
            "dim_sq": s.dim_sq,
            "verdict": s.verdict,
            "note": s.note,
        }
        for s in verdict.summands
    ]
    return report, verdict.table()


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:  # argparse already printed its usage message
        return 0 if exc.code == 0 else 2
    except (DescriptorError, UsageError) as exc:
        build_parser().print_usage(sys.stderr)
        print(f"seqjordan: error: {exc}", file=sys.stderr)
        return 2
    report, table = _run(cfg)
    if cfg.format == "json":
        print(report.to_json())
    else:
        if table is not None:
            print(table)
            print()
        print(render_text(report))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
