"""Command-line interface: ``rhelix <command> scene.json [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or scene error,
3 numerical error.  Errors are printed to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import gallery
from .curve import Curve, frenet
from .errors import ExprSyntaxError, GeometryError, PreconditionError, SceneError, VerificationFailed
from .geodesic import integrate_geodesic, trace_to_surface_curve
from .helix_space import classify_strong_r_helix, surface_plan
from .hypersurface import SurfaceCurve, sample_normals
from .sampling import SamplePlan
from .scene import Scene, load_scene
from .serialize import canonical_json, curve_csv, normals_csv, trace_csv
from .theorems import GeodesicSpec, run_suite, suite_exit_code

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rhelix", description="Helix directions, Frenet frames and geodesics of hypersurfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, samples=True):
        sp.add_argument("scene", help="scene JSON file")
        if samples:
            sp.add_argument("--samples", type=int, help="structured sample count (default: scene setting)")
        sp.add_argument("--tol", type=float, help="conclusion tolerance (default: scene setting, 1e-6)")
        sp.add_argument("--seed", type=int, help="sampling seed (default: scene setting, 0)")
        sp.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")

    a = sub.add_parser("analyze-surface", help="helix-direction space and strong r-helix classification")
    common(a)
    a.add_argument("--dump-normals", metavar="PATH", help="write sampled normals as CSV")

    f = sub.add_parser("frenet", help="Frenet frames and curvatures of a scene curve")
    common(f)
    f.add_argument("curve", help="curve name in the scene")
    f.add_argument("--at", type=float, help="single parameter value")
    f.add_argument("--csv", metavar="PATH", help="write t,x,k samples as CSV")

    g = sub.add_parser("geodesic", help="integrate a geodesic; diagnostics as JSON, trace as CSV")
    common(g, samples=False)
    g.add_argument("curve", nargs="?", help="geodesic name in the scene")
    g.add_argument("--start", type=_floats, help="u0 as comma-separated numbers")
    g.add_argument("--direction", type=_floats, help="ambient unit tangent v0")
    g.add_argument("--velocity-u", type=_floats, help="parameter-space initial velocity")
    g.add_argument("--length", type=float, help="arc length to integrate")
    g.add_argument("--step", type=float, help="step size (default 1e-3)")
    g.add_argument("--csv", metavar="PATH", help="write the trace as CSV")

    v = sub.add_parser("verify", help="run every applicable theorem check; JSON report array")
    common(v)

    sub.add_parser("gallery", help="list built-in surfaces and curves")
    return p


def _emit(text: str, path=None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _need_surface(scene: Scene):
    if scene.surface is None:
        raise SceneError("this command needs a surface", "/surface")
    return scene.surface


def _seed(scene, args):
    return scene.analysis.seed if args.seed is None else args.seed


def cmd_analyze_surface(scene: Scene, args) -> int:
    S = _need_surface(scene)
    tol = scene.analysis.tol if args.tol is None else args.tol
    seed = _seed(scene, args)
    plan = surface_plan(S, seed)
    if args.samples is not None:
        plan = SamplePlan(args.samples, plan.n_random, seed)
    is_helix, r, H = classify_strong_r_helix(S, tol, plan)
    report = {
        "surface": S.name,
        "dim": S.dim,
        "domain": [list(b) for b in S.domain],
        "classification": {"strong_r_helix": is_helix, "r": r},
        "helix_space": H.to_dict(),
        "verification_residuals": H.verification_residuals.tolist(),
        "tolerance": tol,
        "seed": seed,
        "samples": plan.size,
    }
    if args.dump_normals:
        us = plan.box(S.domain)
        _write(args.dump_normals, normals_csv(us, np.array([S.point(u) for u in us]), sample_normals(S, us)))
    _emit(canonical_json(report), args.report)
    return EXIT_OK


def _frenet_curve(scene: Scene, name: str) -> Curve:
    obj = scene.curve(name)
    if isinstance(obj, Curve):
        return obj
    if isinstance(obj, SurfaceCurve):
        return obj.curve()
    g = integrate_geodesic(_need_surface(scene), obj.u0, obj.direction, obj.length, obj.step, obj.parametric)
    return trace_to_surface_curve(g, name=name).curve()


def _frenet_dict(fd):
    return {
        "t": fd.t,
        "frame": fd.frame,
        "curvatures": fd.curvatures,
        "valid_depth": fd.valid_depth,
        "speed": fd.speed,
    }


def cmd_frenet(scene: Scene, args) -> int:
    c = _frenet_curve(scene, args.curve)
    if args.at is not None:
        lo, hi = c.domain
        if not lo <= args.at <= hi:
            raise UsageError(f"--at {args.at} is outside the curve domain [{lo}, {hi}]")
        _emit(canonical_json({"curve": args.curve, **_frenet_dict(frenet(c, args.at))}), args.report)
        return EXIT_OK
    seed = _seed(scene, args)
    n_grid = scene.analysis.samples if args.samples is None else args.samples
    ts = np.sort(SamplePlan(n_grid, 0, seed).interval(*c.domain))
    data = [frenet(c, t) for t in ts]
    if args.csv:
        _write(args.csv, curve_csv(ts, [c(t) for t in ts], [fd.curvatures for fd in data]))
    _emit(canonical_json({"curve": args.curve, "samples": [_frenet_dict(fd) for fd in data]}), args.report)
    return EXIT_OK


def cmd_geodesic(scene: Scene, args) -> int:
    S = _need_surface(scene)
    if args.curve:
        spec = scene.curve(args.curve)
        if not isinstance(spec, GeodesicSpec):
            raise UsageError(f"curve {args.curve!r} is not a geodesic spec")
    else:
        if args.start is None or args.length is None or (args.direction is None) == (args.velocity_u is None):
            raise UsageError("give a geodesic name, or --start, --length and one of --direction / --velocity-u")
        parametric = args.velocity_u is not None
        spec = GeodesicSpec("geodesic", args.start, args.velocity_u if parametric else args.direction, args.length,
                            1e-3, parametric)
    length = spec.length if args.length is None else args.length
    step = spec.step if args.step is None else args.step
    g = integrate_geodesic(S, spec.u0, spec.direction, length, step, spec.parametric)
    if args.csv:
        _write(args.csv, trace_csv(g))
    _emit(canonical_json({"geodesic": spec.name, "start": list(spec.u0), **g.diagnostics(),
                          "end_u": g.u[-1], "end_position": g.positions[-1]}), args.report)
    return EXIT_OK


def cmd_verify(scene: Scene, args) -> int:
    S = _need_surface(scene)
    cfg = scene.suite_config(tol=args.tol, seed=args.seed, samples=args.samples)
    _, reports = run_suite(S, cfg)
    _emit(canonical_json([r.to_dict() for r in reports]), args.report)
    return suite_exit_code(reports)


def cmd_gallery(args) -> int:
    listing = {
        "surfaces": {name: params for name, params in gallery.SURFACE_PARAMS.items()},
        "curves": {name: params for name, params in gallery.CURVE_PARAMS.items()},
    }
    _emit(canonical_json(listing))
    return EXIT_OK


def _error(kind, message, code, **extra):
    payload = {"error": {"type": kind, "message": message, "exit_code": code, **extra}}
    sys.stderr.write(canonical_json(payload))
    return code


COMMANDS = {
    "analyze-surface": cmd_analyze_surface,
    "frenet": cmd_frenet,
    "geodesic": cmd_geodesic,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gallery":
            return cmd_gallery(args)
        scene = load_scene(args.scene)
        return COMMANDS[args.command](scene, args)
    except UsageError as exc:
        return _error("UsageError", str(exc), EXIT_USAGE)
    except SceneError as exc:
        return _error("SceneError", exc.message, EXIT_USAGE, path=exc.path)
    except ExprSyntaxError as exc:
        return _error("SyntaxError", exc.message, EXIT_USAGE, position=exc.position,
                      path=getattr(exc, "pointer", ""), text=exc.text)
    except PreconditionError as exc:
        return _error("PreconditionError", str(exc), EXIT_USAGE)
    except VerificationFailed as exc:
        return _error("VerificationFailed", str(exc), EXIT_VERIFY)
    except (GeometryError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_NUMERIC)
    except ValueError as exc:
        return _error("ValueError", str(exc), EXIT_USAGE)
    except OSError as exc:
        return _error("IOError", str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
