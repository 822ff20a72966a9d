"""Command-line front end.

Subcommands: verify-stepladder, phi-window, coverage, optimize-qubit, lhv.
Angles are degrees on the wire; outputs are deterministic given the same
flags and seed. Exit codes: 0 pass, 1 verification fail, 2 infeasible
input, 3 degenerate input, 4 internal engine disagreement.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from .errors import DegenerateAngle, InconsistentPattern, InfeasiblePhi
from .ladder import (
    LadderSpec,
    ladder_table,
    phi_window,
    solve_exclusion,
    stepladder_table,
    verify_ladder,
)
from .lhv import enumerate_assignments, forward_chain, graph_from_table, replay
from .qubit import optimize, results_csv
from .states import singlet_spin1
from .triads import AnglePattern, build_triads, coverage, pattern_sec3, pattern_sec4

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_DEGENERATE = 3
EXIT_DISAGREEMENT = 4


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _deg(x: float) -> float:
    """Degrees rounded to the 6 decimal places used on all outputs."""
    return round(float(x), 6)


def _verify_report_dict(phi: float, thetas, report) -> dict:
    return {
        "phi_deg": _deg(phi),
        "thetas_deg": [_deg(t) for t in thetas],
        "start_probability": report.start_probability,
        "edges": [
            {
                "sources": [[c.edge.source_particle, i] for i in c.edge.source_indices],
                "target": [c.edge.target_particle, c.edge.target_index],
                "kind": c.edge.kind,
                "conditional": c.conditional,
                "residual": c.residual,
            }
            for c in report.edge_checks
        ],
        "exclusion_probability": report.exclusion_probability,
        "tolerance": report.tolerance,
        "passed": report.passed,
    }


def cmd_verify_stepladder(args) -> int:
    try:
        if args.theta is not None:
            thetas = [args.theta[0]]
        else:
            thetas = solve_exclusion(1, args.phi)
            if thetas is None:
                raise InfeasiblePhi(f"phi = {args.phi} outside the K=1 window")
        table = stepladder_table(args.phi, thetas[0])
    except InfeasiblePhi as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DegenerateAngle as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    report = verify_ladder(singlet_spin1(), table, tolerance=args.tol)
    doc = _verify_report_dict(args.phi, thetas, report)
    if args.format == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        buf.write("kind,sources,target,conditional,residual\n")
        for e in doc["edges"]:
            srcs = ";".join(f"{p}:{i}" for p, i in e["sources"])
            tp, ti = e["target"]
            buf.write(f"{e['kind']},{srcs},{tp}:{ti},{e['conditional']:.17g},{e['residual']:.3e}\n")
        buf.write(f"start,,,{doc['start_probability']:.17g},\n")
        buf.write(f"exclusion,,,{doc['exclusion_probability']:.17g},\n")
        _emit(buf.getvalue(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_phi_window(args) -> int:
    w = phi_window(args.K, seed=args.seed)
    doc = {
        "k": w.k,
        "phi_min_deg": _deg(w.phi_min_deg),
        "phi_max_deg": _deg(w.phi_max_deg),
        "maximum": w.maximum,
        "analytic_maximum": w.analytic_maximum,
        "agreement_residual": abs(w.maximum - w.analytic_maximum),
        "thetas_deg": [_deg(t) for t in w.thetas_deg],
    }
    if args.format == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(
            "K,phi_min_deg,phi_max_deg,maximum,analytic_maximum,residual\n"
            f"{w.k},{doc['phi_min_deg']:.6f},{doc['phi_max_deg']:.6f},"
            f"{w.maximum:.17g},{w.analytic_maximum:.17g},{doc['agreement_residual']:.3e}\n",
            args.out,
        )
    return EXIT_PASS


_PATTERNS = {"sec3": pattern_sec3, "sec4": pattern_sec4}


def cmd_coverage(args) -> int:
    try:
        if args.pattern:
            pattern = _PATTERNS[args.pattern]()
        else:
            a1, a2, a3 = args.angles
            pattern = AnglePattern(a1, a2, a3)
        pair = build_triads(pattern)
    except InconsistentPattern as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    window = phi_window(args.K, seed=args.seed)
    report = coverage(singlet_spin1(), pair, window)
    if args.format == "json":
        doc = {
            "pattern_deg": [
                _deg(pattern.phi1_deg), _deg(pattern.phi2_deg), _deg(pattern.phi3_deg)
            ],
            "window_deg": [_deg(window.phi_min_deg), _deg(window.phi_max_deg)],
            "cells": [
                {
                    "u_index": c.u_index,
                    "v_index": c.v_index,
                    "angle_deg": _deg(c.angle_deg),
                    "probability": c.probability,
                    "covered": c.covered,
                }
                for c in report.cells
            ],
            "covered_probability": report.covered_probability,
            "uncovered_probability": report.uncovered_probability,
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(report.to_csv(), args.out)
    return EXIT_PASS


def cmd_optimize_qubit(args) -> int:
    result = optimize(args.K, seed=args.seed)
    _emit(results_csv([result], restarts=100), args.out)
    return EXIT_PASS


def cmd_lhv(args) -> int:
    try:
        thetas = solve_exclusion(args.K, args.phi)
        if thetas is None:
            raise InfeasiblePhi(f"phi = {args.phi} outside the K={args.K} window")
        table = ladder_table(LadderSpec(args.K, args.phi, tuple(thetas)))
    except InfeasiblePhi as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DegenerateAngle as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    report = verify_ladder(singlet_spin1(), table, tolerance=args.tol)
    if not report.passed:
        return EXIT_FAIL
    graph = graph_from_table(table, strict=True)
    n = 4 * args.K
    premises = [(f"A{n}", 0), (f"B{n}", 0)]
    cert = forward_chain(graph, premises)
    count, _ = enumerate_assignments(
        graph, premises, max_observables=2 * (4 * args.K + 1)
    )
    doc = {
        "k": args.K,
        "phi_deg": _deg(args.phi),
        "thetas_deg": [_deg(t) for t in thetas],
        "forward_chain_contradiction": cert.contradiction,
        "certificate_replay_ok": replay(graph, cert),
        "assignment_count": count,
        "certificate": json.loads(cert.to_json()),
    }
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    if cert.contradiction != (count == 0):
        return EXIT_DISAGREEMENT
    return EXIT_PASS if cert.contradiction else EXIT_FAIL


def _angle_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _load_config(path: str) -> dict[str, str]:
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spin1ladder")
    parser.add_argument("--config", help="key=value file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--K", type=int, default=1)
        p.add_argument("--phi", type=float)
        p.add_argument("--theta", type=_angle_list)
        p.add_argument("--pattern", choices=sorted(_PATTERNS))
        p.add_argument("--angles", type=_angle_list)
        p.add_argument("--grid", type=int, default=400)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")
        p.add_argument("--format", choices=["json", "csv"], default=fmt_default)

    common(sub.add_parser("verify-stepladder"), "json")
    common(sub.add_parser("phi-window"), "json")
    common(sub.add_parser("coverage"), "csv")
    common(sub.add_parser("optimize-qubit"), "csv")
    common(sub.add_parser("lhv"), "json")
    return parser


_HANDLERS = {
    "verify-stepladder": cmd_verify_stepladder,
    "phi-window": cmd_phi_window,
    "coverage": cmd_coverage,
    "optimize-qubit": cmd_optimize_qubit,
    "lhv": cmd_lhv,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        defaults = _load_config(args.config)
        explicit = {a.lstrip("-").split("=")[0] for a in argv if a.startswith("--")}
        for key, val in defaults.items():
            if key in explicit or not hasattr(args, key):
                continue
            current = {"theta": _angle_list, "angles": _angle_list,
                       "K": int, "grid": int, "seed": int,
                       "phi": float, "tol": float}.get(key, str)
            setattr(args, key, current(val))
    if not 0.0 < args.tol <= 1e-4:
        print("error: tolerance must lie in (0, 1e-4]", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.command in ("verify-stepladder", "lhv") and args.phi is None:
        print("error: --phi required", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.command == "coverage" and not (args.pattern or args.angles):
        print("error: --pattern or --angles required", file=sys.stderr)
        return EXIT_INFEASIBLE
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
