"""Command-line front end.

Subcommands: ``gen`` (elaborate and describe a sequence), ``verify``
(symbolic identity checks plus the numeric bridge), ``slope`` (distance
sweep and suppression-order fit), ``catalog`` (known schemes and the
minimum-pulse series). JSON output is the stable machine contract; the
text tables are for humans and may change.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import dsl, numsim, sequence, symbolic
from .pauli import PauliAxis

DEFAULT_SEED = 42

__all__ = ["RunConfig", "build_parser", "main", "entry"]


@dataclass
class RunConfig:
    """Parsed invocation; one instance drives one command."""

    command: str
    seq: Optional[str] = None
    n_bath: int = 2
    J: float = 1.0
    beta: float = 1.0
    seed: int = DEFAULT_SEED
    tau_min: float = 1e-3
    tau_max: float = 3e-2
    points: int = 12
    out: Optional[str] = None
    format: str = "text"

    def validate(self) -> None:
        if self.command == "slope":
            if not self.tau_min < self.tau_max:
                raise ValueError("--tau-min must be smaller than --tau-max")
            if self.points < 4:
                raise ValueError("--points must be at least 4 for a slope fit")


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-bath", type=int, default=2, help="bath spin count")
    p.add_argument("--J", type=float, default=1.0, help="interaction strength scale")
    p.add_argument("--beta", type=float, default=1.0, help="bath Hamiltonian scale")
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="model RNG seed (default: DD_DEFAULT_SEED env or 42)",
    )


def _add_output_flags(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--out", default=None, help="write output to this path")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpdd",
        description="Uniform pi-pulse dynamical-decoupling sequence toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="elaborate a sequence expression")
    gen.add_argument("--seq", required=True, help="sequence expression")
    _add_output_flags(gen, ("text", "json"))

    verify = sub.add_parser("verify", help="symbolic and numeric identity checks")
    verify.add_argument("--seq", required=True)
    _add_model_flags(verify)
    _add_output_flags(verify, ("text", "json"))

    slope = sub.add_parser("slope", help="distance sweep and order fit")
    slope.add_argument("--seq", required=True)
    _add_model_flags(slope)
    slope.add_argument("--tau-min", type=float, default=1e-3)
    slope.add_argument("--tau-max", type=float, default=3e-2)
    slope.add_argument("--points", type=int, default=12)
    _add_output_flags(slope, ("csv", "json"))

    cat = sub.add_parser("catalog", help="known schemes and the K_min series")
    _add_output_flags(cat, ("text", "json"))
    return parser


def _resolve_seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return seed
    return int(os.environ.get("DD_DEFAULT_SEED", DEFAULT_SEED))


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in (
        "seq",
        "n_bath",
        "J",
        "beta",
        "tau_min",
        "tau_max",
        "points",
        "out",
        "format",
    ):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command in ("verify", "slope"):
        cfg.seed = _resolve_seed(args)
    cfg.validate()
    return cfg


def _emit(cfg: RunConfig, payload: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _gen_report(seq: "sequence.PulseSequence") -> dict:
    cyclic, phase_pow = sequence.is_cyclic(seq)
    report = seq.to_json()
    report["cyclic"] = cyclic
    report["cyclic_phase_pow"] = phase_pow
    report["odd_sites_uniform"] = sequence.check_odd_sites(seq)
    report["half_repeat"] = (
        sequence.check_half_repeat(seq) if seq.K % 2 == 0 else None
    )
    return report


def cmd_gen(cfg: RunConfig) -> int:
    seq = dsl.elaborate(dsl.parse(cfg.seq))
    report = _gen_report(seq)
    report["expr"] = cfg.seq
    if cfg.format == "json":
        _emit(cfg, json.dumps(report, indent=2) + "\n")
        return 0
    lines = [
        f"expression   : {cfg.seq}",
        f"pulses       : {report['paper_order']}  (last applied first)",
        f"K            : {report['K']}",
        f"class        : {report['class'] if report['class'] else 'n/a (no provenance)'}",
        f"N            : {report['N'] if report['N'] is not None else 'n/a'}",
        f"cyclic       : {report['cyclic']} (phase i^{report['cyclic_phase_pow']})"
        if report["cyclic"]
        else "cyclic       : False",
        f"odd sites    : {report['odd_sites_uniform']}",
        f"half repeat  : {report['half_repeat']}",
    ]
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _verify_checks(cfg: RunConfig, seq: "sequence.PulseSequence") -> list[dict]:
    checks: list[dict] = []
    cyclic, _ = sequence.is_cyclic(seq)
    h0 = symbolic.h0_generic()
    frames = symbolic.toggling_frames(seq, h0)
    h0_avg = symbolic.avg_h0(frames)

    if seq.provenance is not None:
        predicted = h0
        for axis in seq.provenance:
            predicted = symbolic.project0(axis, predicted)
        checks.append(
            {
                "name": "zeroth_order_matches_projection_chain",
                "passed": h0_avg == predicted,
                "detail": h0_avg.pretty(),
            }
        )
        if len(seq.provenance) >= 2:
            outer_axis = seq.provenance[-1]
            inner = sequence.cpdd_from_order(seq.provenance[:-1])
            ok = symbolic.verify_lemma1(sequence.projection(outer_axis), inner)
            checks.append({"name": "lemma1_outer_projection", "passed": ok})
    else:
        checks.append(
            {
                "name": "zeroth_order_average",
                "passed": True,
                "detail": h0_avg.pretty(),
                "skipped_class_checks": "no provenance",
            }
        )

    order1 = symbolic.avg_h1(symbolic.interval_hamiltonians(seq, h0))
    checks.append(
        {
            "name": "first_order_average_computed",
            "passed": True,
            "detail": f"{sum(len(order1.component(a).items()) for a in PauliAxis)} terms",
        }
    )

    model = numsim.build_model(cfg.n_bath, cfg.J, cfg.beta, cfg.seed)
    residual = numsim.numeric_check_h0(seq, model)
    checks.append(
        {
            "name": "numeric_bridge_h0",
            "passed": residual <= 1e-12,
            "residual": residual,
        }
    )
    if cyclic:
        factor = numsim.fit_h1_convention(model)
        checks.append(
            {
                "name": "order1_convention_factor",
                "passed": abs(factor - 1.0) < 1e-4,
                "factor": factor,
            }
        )
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    seq = dsl.elaborate(dsl.parse(cfg.seq))
    checks = _verify_checks(cfg, seq)
    all_pass = all(c["passed"] for c in checks)
    if cfg.format == "json":
        payload = {
            "expr": cfg.seq,
            "seed": cfg.seed,
            "checks": checks,
            "passed": all_pass,
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")
    else:
        lines = []
        for c in checks:
            status = "PASS" if c["passed"] else "FAIL"
            extra = ""
            if "residual" in c:
                extra = f"  residual={c['residual']:.3e}"
            elif "factor" in c:
                extra = f"  factor={c['factor']:.9f}"
            lines.append(f"[{status}] {c['name']}{extra}")
        lines.append("all checks passed" if all_pass else "some checks FAILED")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if all_pass else 1


def cmd_slope(cfg: RunConfig) -> int:
    seq = dsl.elaborate(dsl.parse(cfg.seq))
    model = numsim.build_model(cfg.n_bath, cfg.J, cfg.beta, cfg.seed)
    grid = np.geomspace(cfg.tau_min, cfg.tau_max, cfg.points)
    est = numsim.estimate_order(seq, model, grid)
    if cfg.format == "csv":
        _emit(cfg, numsim.distances_to_csv(cfg.seq, model, est))
    else:
        payload = {
            "sequence": cfg.seq,
            "seed": cfg.seed,
            "n_bath": cfg.n_bath,
            "J": cfg.J,
            "beta": cfg.beta,
            **est.to_json(),
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_catalog(cfg: RunConfig) -> int:
    rows = sequence.catalog()
    series = {n: sequence.k_min(n) for n in range(1, 6)}
    if cfg.format == "json":
        payload = {
            "rows": [
                {
                    "name": r.name,
                    "class": list(r.counts),
                    "pattern": r.pattern,
                    "K": r.K,
                    "N": r.N,
                }
                for r in rows
            ],
            "k_min": {str(n): k for n, k in series.items()},
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")
        return 0
    width = max(len(r.name) for r in rows)
    lines = [f"{'name':<{width}}  class      pattern                K      N"]
    for r in rows:
        cls = "{" + ",".join(str(c) for c in r.counts) + "}"
        lines.append(f"{r.name:<{width}}  {cls:<9}  {r.pattern:<21}  {r.K:<5}  {r.N}")
    lines.append("")
    lines.append("minimum pulses per order: " + ", ".join(
        f"N={n}: {k}" for n, k in series.items()
    ))
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "slope": cmd_slope,
    "catalog": cmd_catalog,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except (ValueError, dsl.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
