"""Command-line interface.

Subcommands:

* ``check-structure MANIFEST``: axiom and normality residuals, the
  characteristic functions with sampled values, and the subclass label.
* ``curve-report MANIFEST NAME``: regime-dispatched frame report for one
  curve of the manifest, at explicit parameters (``--at``) or on a grid.
* ``verify``: run the built-in verification suite over the bundled
  structures and curves.
* ``dump FIXTURE``: print the manifest of a bundled fixture.

Exit codes: 0 on success, 1 when a check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import fixtures
from .curve import kinematics
from .errors import GeometryError, ParseError
from .expr import evaluate, to_text
from .frames import curve_report
from .manifest import Manifest, dump_manifest, parse_manifest
from .structure import SampleOptions, alpha_beta, classify, normality_residuals
from .verify import SuiteOptions, run_suite


def _sample_options(args: argparse.Namespace) -> SampleOptions:
    box = None
    if getattr(args, "box", None):
        values = [float(v) for v in args.box.split(",")]
        if len(values) != 6:
            raise ParseError("--box needs six comma-separated numbers")
        box = tuple((values[2 * i], values[2 * i + 1]) for i in range(3))
    return SampleOptions(count=args.samples, seed=args.seed, tolerance=args.tol, box=box)


def _load_manifest(path: str) -> Manifest:
    text = Path(path).read_text(encoding="utf-8")
    return parse_manifest(text, name=Path(path).stem)


def cmd_check_structure(args: argparse.Namespace) -> int:
    manifest = _load_manifest(args.manifest)
    structure = manifest.structure
    opts = _sample_options(args)
    points = structure.sample_points(opts)

    metric_report = structure.metric.validate(points)
    axiom = structure.axiom_residuals(points)["axioms"]
    fundamental = structure.fundamental_form_residual(points)
    eigen = structure.eigen_split_residual(points)
    residuals = normality_residuals(structure, points)
    alpha, beta = alpha_beta(structure)
    label = classify(structure, points)

    alpha_samples = [evaluate(alpha, p) for p in points[:3]]
    beta_samples = [evaluate(beta, p) for p in points[:3]]

    payload = {
        "structure": structure.name,
        "samples": opts.count,
        "seed": opts.seed,
        "metric": metric_report,
        "axiom_residual": axiom,
        "fundamental_form_residual": fundamental,
        "phi_eigenvalue_residual": eigen,
        "normality": {
            "nijenhuis": residuals.nijenhuis,
            "covariant_phi": residuals.covariant_phi,
            "covariant_xi": residuals.covariant_xi,
        },
        "alpha": to_text(alpha),
        "beta": to_text(beta),
        "alpha_samples": alpha_samples,
        "beta_samples": beta_samples,
        "classification": label,
    }
    if args.json:
        Path(args.json).write_text(json.dumps(payload, indent=2), encoding="utf-8")

    print(f"structure        : {structure.name}")
    print(f"samples / seed   : {opts.count} / {opts.seed}")
    print(
        "metric           : symmetry {symmetry:.2e}, min |det| {min_abs_det:.3g}, "
        "signature failures {signature_failures:.0f}".format(**metric_report)
    )
    print(f"axiom residual   : {axiom:.3e}")
    print(f"fundamental form : {fundamental:.3e}")
    print(f"phi eigenvalues  : {eigen:.3e}")
    print(
        f"normality        : nijenhuis {residuals.nijenhuis:.3e}, "
        f"covariant-phi {residuals.covariant_phi:.3e}, covariant-xi {residuals.covariant_xi:.3e}"
    )
    print(f"alpha            : {to_text(alpha)}")
    print(f"beta             : {to_text(beta)}")
    print(f"classification   : {label}")

    tol = args.tol
    ok = (
        residuals.nijenhuis < tol * 1.0
        and residuals.covariant_phi < tol * 10.0
        and residuals.covariant_xi < tol * 10.0
        and axiom < tol
        and metric_report["signature_failures"] == 0
    )
    if label == "non-normal" or not ok:
        print("status           : FAIL (structure checks exceeded tolerance)")
        return 1
    print("status           : pass")
    return 0


def cmd_curve_report(args: argparse.Namespace) -> int:
    manifest = _load_manifest(args.manifest)
    if args.curve not in manifest.curves:
        known = ", ".join(sorted(manifest.curves)) or "none"
        print(f"error: curve '{args.curve}' not in manifest (has: {known})", file=sys.stderr)
        return 2
    curve = manifest.curves[args.curve]
    opts = _sample_options(args)
    if args.at:
        ts = [float(v) for v in args.at.split(",")]
    elif args.grid:
        a, b, n = args.grid.split(",")
        ts = [float(v) for v in np.linspace(float(a), float(b), int(n))]
    else:
        lo, hi = curve.interval
        ts = [float(v) for v in np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5)]

    kin = kinematics(curve, opts)
    report = curve_report(curve, ts, opts)
    print(f"curve            : {curve.name}")
    print(f"causal character : {report.causal} (epsilon1 = {report.epsilon1})")
    print(f"slant constant   : {report.slant_constant:.12g}")
    print(
        f"constancy        : speed residual {kin.speed_residual:.2e}, "
        f"slant residual {kin.slant_residual:.2e}"
    )
    print(f"regime           : {report.regime}")
    for note in report.notes:
        print(f"note             : {note}")
    for row in report.rows:
        parts = []
        for key, value in row.items():
            if isinstance(value, float):
                parts.append(f"{key}={value:.9g}")
            elif isinstance(value, list):
                parts.append(f"{key}=({', '.join(f'{v:.9g}' for v in value)})")
            else:
                parts.append(f"{key}={value}")
        print("  " + "  ".join(parts))
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    opts = SuiteOptions(samples=args.samples, seed=args.seed)
    report = run_suite(opts)
    print(report.format_table())
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    return 0 if report.passed else 1


def cmd_dump(args: argparse.Namespace) -> int:
    structure = fixtures.builtin_structure(args.fixture)
    curves = fixtures.builtin_curves(args.fixture)
    sys.stdout.write(dump_manifest(structure, curves))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paraslant",
        description="Slant-curve geometry on 3-dimensional almost paracontact metric structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sampling(p: argparse.ArgumentParser) -> None:
        p.add_argument("--samples", type=int, default=100, help="sample-point count (default 100)")
        p.add_argument("--tol", type=float, default=1e-9, help="base tolerance (default 1e-9)")
        p.add_argument("--seed", type=int, default=42, help="sampling seed (default 42)")
        p.add_argument("--box", type=str, default=None, help="sampling box: x0,x1,y0,y1,z0,z1")
        p.add_argument("--json", type=str, default=None, help="write a JSON report to this path")

    p_check = sub.add_parser("check-structure", help="validate a manifest structure")
    p_check.add_argument("manifest")
    add_sampling(p_check)
    p_check.set_defaults(func=cmd_check_structure)

    p_curve = sub.add_parser("curve-report", help="frame report for one manifest curve")
    p_curve.add_argument("manifest")
    p_curve.add_argument("curve")
    p_curve.add_argument("--at", type=str, default=None, help="comma-separated parameter values")
    p_curve.add_argument("--grid", type=str, default=None, help="a,b,n: n values from a to b")
    add_sampling(p_curve)
    p_curve.set_defaults(func=cmd_curve_report)

    p_verify = sub.add_parser("verify", help="run the built-in verification suite")
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--json", type=str, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_dump = sub.add_parser("dump", help="print a bundled fixture manifest")
    p_dump.add_argument("fixture", choices=sorted(fixtures.STRUCTURES))
    p_dump.set_defaults(func=cmd_dump)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except GeometryError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
