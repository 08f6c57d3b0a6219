"""Command-line interface.

Exit codes: 0 success, 1 invalid input or I/O failure, 2 numeric failure
(vanishing curvature, degenerate surface normal, expression leaving its
domain), 3 a ``verify`` check failed.  Errors are reported on stderr as a
single JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .errors import EvalError, GalcurvesError, NumericError, ValidationError
from .expr import parse
from .families import classify, family_smarandache
from .formats import (
    CurveTable,
    curve_table,
    export_csv,
    export_json,
    frames_table,
    load_profile,
    parse_profile,
    table_to_csv,
    write_json,
)
from .frames import (
    BOUNDARY_TRIM,
    ParametricSurface,
    SampledCurve,
    compatibility_check,
    darboux_apparatus,
    frenet_apparatus,
    frenet_residuals,
)
from .quadrature import Grid
from .smarandache import DARBOUX_KINDS, FRENET_KINDS, SmarandacheKind, smarandache_closed, smarandache_direct
from .synthesis import CurvatureProfile, darboux_from_profile, frenet_from_profile, position_from_profile

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3

EXAMPLE2_SURFACE = ("u + v", "(u - sin(u + v)*cos(u + v))/4", "(sin(u + v)^2 - u^2)/4")
EXAMPLE2_DOMAIN = (0.3, np.pi - 0.3)
EXAMPLE2_SAMPLES = 2001


class UsageError(GalcurvesError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tol)

    def as_dict(self):
        return {"name": self.name, "value": self.value, "tol": self.tol, "passed": self.passed}


def _interior(a, trim=BOUNDARY_TRIM):
    return a[trim : len(a) - trim]


def route_deviation(p: CurvatureProfile, kind, frenet=None) -> float:
    """Largest interior difference between the closed form and the frame sum.

    The frame sum uses the Frenet frame recovered numerically from the
    synthesised curve, so the two routes share only the Darboux data.
    """
    if frenet is None:
        frenet = frenet_apparatus(position_from_profile(p))
    closed = smarandache_closed(p, kind).points
    direct = smarandache_direct(frenet, kind).points
    return float(np.max(np.abs(_interior(closed - direct))))


def run_checks(p: CurvatureProfile, tol: float = 1e-5) -> list:
    """Dual-route, Frenet-Serret and curvature-compatibility checks."""
    curve = position_from_profile(p)
    frenet = frenet_apparatus(curve)
    checks = [Check(f"dual_route_{k.value}", route_deviation(p, k, frenet), tol) for k in FRENET_KINDS]
    res = frenet_residuals(frenet)
    checks += [Check(f"frenet_serret_{name}", value, tol) for name, value in res._asdict().items()]
    comp = compatibility_check(darboux_from_profile(p), frenet)
    checks += [Check(f"compatibility_{name}", value, tol) for name, value in comp._asdict().items()]
    return checks


def _emit(table: CurveTable, out):
    if out is None:
        sys.stdout.write(table_to_csv(table))
    elif str(out).endswith(".json"):
        export_json(table, out)
    else:
        export_csv(table, out)


def _cmd_generate(args):
    doc = load_profile(args.profile)
    p = doc.profile()
    _emit(curve_table(position_from_profile(p)), args.out)
    if args.metadata:
        write_json({"constants": p.resolved_constants()}, args.metadata)
    return EXIT_OK


def _cmd_frames(args):
    p = load_profile(args.profile).profile()
    _emit(frames_table(frenet_from_profile(p), darboux_from_profile(p)), args.out)
    return EXIT_OK


def _smarandache_curve(p: CurvatureProfile, kind, route):
    kind = SmarandacheKind.coerce(kind)
    if kind.needs_darboux:
        return smarandache_direct(darboux_from_profile(p), kind)
    if route == "direct":
        return smarandache_direct(frenet_apparatus(position_from_profile(p)), kind)
    return smarandache_closed(p, kind)


def _cmd_smarandache(args):
    p = load_profile(args.profile).profile()
    _emit(curve_table(_smarandache_curve(p, args.kind, args.route)), args.out)
    return EXIT_OK


def _cmd_family(args):
    doc = load_profile(args.profile)
    if doc.family is None:
        raise ValidationError("/family", "the family command needs a profile with a 'family' object")
    _emit(curve_table(family_smarandache(doc.family, doc.grid, args.kind)), args.out)
    return EXIT_OK


def _cmd_verify(args):
    p = load_profile(args.profile).profile()
    checks = run_checks(p, args.tol)
    ok = all(c.passed for c in checks)
    report = {"passed": ok, "checks": [c.as_dict() for c in checks]}
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_classify(args):
    f = frenet_from_profile(load_profile(args.profile).profile())
    print(classify(f.kappa, f.tau, args.tol).value)
    return EXIT_OK


def load_fixture(name: str) -> dict:
    text = resources.files("galcurves").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def write_example1(outdir) -> Path:
    """Curve, frames and all six Smarandache curves of the Fresnel example."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    source = load_fixture("example1")
    p = parse_profile(source).profile()
    frenet = frenet_from_profile(p)
    darboux = darboux_from_profile(p)
    export_csv(curve_table(position_from_profile(p)), outdir / "curve.csv")
    export_csv(frames_table(frenet, darboux), outdir / "frames.csv")
    for kind in SmarandacheKind:
        export_csv(curve_table(_smarandache_curve(p, kind, "closed")), outdir / f"smarandache_{kind.value}.csv")
    checks = run_checks(p)
    write_json(
        {
            "profile": source,
            "constants": p.resolved_constants(),
            "classification": classify(frenet.kappa, frenet.tau).value,
            "checks": [c.as_dict() for c in checks],
        },
        outdir / "metadata.json",
    )
    return outdir


def example2_surface() -> ParametricSurface:
    return ParametricSurface.from_strings(*EXAMPLE2_SURFACE)


def example2_darboux(samples: int = EXAMPLE2_SAMPLES):
    """Darboux apparatus of ``x -> phi(x, 0)`` on the example surface."""
    grid = Grid(*EXAMPLE2_DOMAIN, samples)
    return darboux_apparatus(example2_surface(), parse("x", "x"), parse("0", "x"), grid)


def write_example2(outdir) -> Path:
    """Surface grid, curve, both frames and all Smarandache curves of the surface example."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    surface = example2_surface()
    darboux = example2_darboux()
    grid = darboux.grid
    curve = surface(grid.nodes, np.zeros(grid.n))
    sampled = SampledCurve(grid, curve)
    frenet = frenet_apparatus(sampled)
    export_csv(curve_table(sampled), outdir / "curve.csv")
    export_csv(frames_table(frenet, darboux), outdir / "frames.csv")
    for kind in SmarandacheKind:
        field = darboux if kind in DARBOUX_KINDS else frenet
        export_csv(curve_table(smarandache_direct(field, kind)), outdir / f"smarandache_{kind.value}.csv")

    u, v = np.meshgrid(np.linspace(0.0, np.pi, 61), np.linspace(-0.5, 0.5, 21), indexing="ij")
    pts = surface(u.ravel(), v.ravel())
    export_csv(
        CurveTable.from_columns([("u", u.ravel()), ("v", v.ravel()), *[(c, pts[:, i]) for i, c in enumerate("XYZ")]]),
        outdir / "surface.csv",
    )

    x = grid.nodes
    inner = slice(BOUNDARY_TRIM, grid.n - BOUNDARY_TRIM)
    write_json(
        {
            "surface": dict(zip(("x", "y", "z"), EXAMPLE2_SURFACE)),
            "curve": {"u": "x", "v": "0"},
            "domain": list(EXAMPLE2_DOMAIN),
            "samples": grid.n,
            "summary": {
                "max_abs_kappa_g": float(np.max(np.abs(darboux.kappa_g[inner]))),
                "max_kappa_error_vs_abs_sin": float(
                    np.max(np.abs(np.hypot(darboux.kappa_g, darboux.kappa_n) - np.abs(np.sin(x)))[inner])
                ),
                "max_abs_tau_g_error_vs_one": float(np.max(np.abs(np.abs(darboux.tau_g) - 1.0)[inner])),
                "frenet_tau_range": [float(np.min(frenet.tau[inner])), float(np.max(frenet.tau[inner]))],
            },
        },
        outdir / "metadata.json",
    )
    return outdir


def _cmd_example1(args):
    write_example1(args.outdir)
    return EXIT_OK


def _cmd_example2(args):
    write_example2(args.outdir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="galcurves", description="Curves and Smarandache curves in Galilean 3-space.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kinds = [k.value for k in SmarandacheKind]

    p = sub.add_parser("generate", help="synthesise the curve from its Darboux data")
    p.add_argument("profile")
    p.add_argument("--out", help="CSV (or .json) output; stdout if omitted")
    p.add_argument("--metadata", help="write resolved integration constants to this JSON file")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("frames", help="Frenet and Darboux frame columns")
    p.add_argument("profile")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_frames)

    p = sub.add_parser("smarandache", help="one Smarandache curve of the profile")
    p.add_argument("profile")
    p.add_argument("--kind", required=True, choices=kinds)
    p.add_argument("--route", choices=("closed", "direct"), default="closed")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_smarandache)

    p = sub.add_parser("family", help="Smarandache curve of a family case from its closed form")
    p.add_argument("profile")
    p.add_argument("--kind", required=True, choices=[k.value for k in FRENET_KINDS])
    p.add_argument("--out")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("verify", help="dual-route, Frenet-Serret and compatibility residuals")
    p.add_argument("profile")
    p.add_argument("--tol", type=float, default=1e-5)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", help="print the curvature/torsion class label")
    p.add_argument("profile")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_classify)

    for name, func in (("example1", _cmd_example1), ("example2", _cmd_example2)):
        p = sub.add_parser(name, help=f"write the {name} plot data tree")
        p.add_argument("--outdir", required=True)
        p.set_defaults(func=func)
    return parser


def _error_payload(exc) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("path", "index", "kind", "offset", "problems"):
        if hasattr(exc, attr):
            out[attr] = getattr(exc, attr)
    return out


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except GalcurvesError as exc:
        code = EXIT_NUMERIC if isinstance(exc, (NumericError, EvalError)) else EXIT_INPUT
        sys.stderr.write(json.dumps(_error_payload(exc), sort_keys=True) + "\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
