"""Falsifiable checks of the helix-hypersurface results, with residual reporting.

Every check returns a :class:`TheoremReport` whose status is one of

``pass`` / ``fail``
    the hypothesis holds and the conclusion was evaluated;
``vacuous``
    there is nothing to test (no helix directions, degenerate frame, ...);
``violated``
    the hypothesis is false for this input, so the conclusion is not evaluated;
``error``
    a numerical failure (only produced by :func:`run_suite`).

A conclusion is never evaluated unless the hypothesis is satisfied, so a
vacuous or violated input cannot produce ``pass``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .curve import EPS_REG, frenet, is_line, is_spherical, tangent_indicatrix
from .errors import DegenerateFrame, GeometryError, NonRegular, PreconditionError, VerificationFailed
from .geodesic import GeodesicTrace, integrate_geodesic, trace_to_surface_curve
from .helix_space import HelixDirectionSpace, helix_directions, surface_plan, verify_helix_space
from .hypersurface import (
    Hypersurface,
    SurfaceCurve,
    is_asymptotic,
    is_geodesic,
    is_line_of_curvature,
    sample_normals,
)
from .sampling import SamplePlan

TOL = 1e-6
HYPOTHESIS_TOL = 1e-8
ANGLE_MARGIN = 1e-3
NONGEODESIC_TOL = 1e-6

GEODESIC_SLANT_HELIX = "geodesic-slant-helix"
INDICATRIX_HELIX = "indicatrix-helix"
GAUSS_IMAGE_ANGLE = "gauss-image-constant-angle"
GAUSS_IMAGE_NOT_GEODESIC = "gauss-image-not-geodesic"
GAUSS_DERIVATIVE = "gauss-derivative-orthogonal"
FRAME_DERIVATIVE = "frame-derivative-orthogonal"
ASYMPTOTIC = "asymptotic-decomposition"
GEODESIC_LINE = "geodesic-is-line"
CURVATURE_LINE = "curvature-line-is-line"

CHECK_ORDER = (
    GEODESIC_SLANT_HELIX,
    INDICATRIX_HELIX,
    GAUSS_IMAGE_ANGLE,
    GAUSS_IMAGE_NOT_GEODESIC,
    GAUSS_DERIVATIVE,
    FRAME_DERIVATIVE,
    ASYMPTOTIC,
    GEODESIC_LINE,
    CURVATURE_LINE,
)


@dataclass
class TheoremReport:
    check: str
    subject: str
    hypothesis: str  # satisfied | vacuous | violated
    conclusion: str  # pass | fail | not_evaluated
    status: str  # pass | fail | vacuous | violated | error
    max_residual: Optional[float]
    tolerance: float
    samples: int
    hypothesis_residual: Optional[float] = None
    details: dict = field(default_factory=dict)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def _report(check, subject, tol, samples, *, residual=None, hyp="satisfied", hyp_res=None, details=None, message=""):
    if hyp != "satisfied":
        conclusion, status = "not_evaluated", hyp
        residual = None
    else:
        ok = residual is not None and residual <= tol
        conclusion = status = "pass" if ok else "fail"
    return TheoremReport(
        check=check,
        subject=subject,
        hypothesis=hyp,
        conclusion=conclusion,
        status=status,
        max_residual=None if residual is None else float(residual),
        tolerance=float(tol),
        samples=int(samples),
        hypothesis_residual=None if hyp_res is None else float(hyp_res),
        details=details or {},
        message=message,
    )


def _no_directions(check, subject, tol):
    return _report(check, subject, tol, 0, hyp="vacuous", message="no helix directions (r = 0)")


def _curve_plan(plan: Optional[SamplePlan]) -> SamplePlan:
    return plan if plan is not None else SamplePlan()


def _as_curve(S, g):
    """Accept a trace or a surface curve; return ``(surface curve, subject name)``."""
    if isinstance(g, GeodesicTrace):
        return trace_to_surface_curve(g), "geodesic"
    if g.surface is not S:
        g = g.with_surface(S)
    return g, g.name or "curve"


def _spread(values):
    """``max |x - mean|`` per column and the column means."""
    mean = values.mean(axis=0)
    return np.abs(values - mean).max(axis=0), mean


def _frames(curve, ts, depth):
    """Frenet data at ``ts``; ``None`` if the frame is shallower than ``depth`` anywhere."""
    out = []
    for t in ts:
        f = frenet(curve, t)
        if f.valid_depth < depth:
            return None, f
        out.append(f)
    return out, None


def _require_geodesic(S, gamma, tol, plan):
    v = is_geodesic(S, gamma, tol, plan)
    if not v:
        raise PreconditionError(f"curve is not a geodesic (residual {v.residual:.3g} > {tol:.3g})")
    return v


def check_geodesic_slant_helix(
    S: Hypersurface, g, H: HelixDirectionSpace, tol: float = TOL, plan: Optional[SamplePlan] = None
) -> TheoremReport:
    """Along a geodesic, ``<V_2, d>`` is constant for every helix direction ``d``.

    Also records the identity ``N = +-V_2`` (the geodesic's principal normal
    is the surface normal); both residuals must be within ``tol``.
    """
    gamma, subject = _as_curve(S, g)
    if H.r == 0:
        return _no_directions(GEODESIC_SLANT_HELIX, subject, tol)
    plan = _curve_plan(plan)
    _require_geodesic(S, gamma, tol, plan)
    ts = gamma.sample(plan)
    frames, bad = _frames(gamma.curve(), ts, 2)
    if frames is None:
        return _report(
            GEODESIC_SLANT_HELIX, subject, tol, len(ts), hyp="vacuous",
            message=f"principal normal undefined (k1 = 0) at t={bad.t:.6g}",
        )
    V2 = np.array([f.V(2) for f in frames])
    spread, mean = _spread(V2 @ H.basis.T)
    normals = np.array([gamma.series(t, 0)[1][0] for t in ts])
    plus = np.linalg.norm(normals - V2, axis=1)
    minus = np.linalg.norm(normals + V2, axis=1)
    xi = np.minimum(plus, minus)
    sign = 1 if plus.max() <= minus.max() else -1
    details = {
        "direction_residuals": spread.tolist(),
        "constants": mean.tolist(),
        "orthogonal": (np.abs(mean) <= tol).tolist(),
        "normal_identity_residual": float(xi.max()),
        "normal_sign": sign,
    }
    return _report(
        GEODESIC_SLANT_HELIX, subject, tol, len(ts),
        residual=max(float(spread.max()), float(xi.max())), details=details,
    )


def check_indicatrix_helix(
    S: Hypersurface, g, H: HelixDirectionSpace, tol: float = TOL, plan: Optional[SamplePlan] = None
) -> TheoremReport:
    """The tangent indicatrix of a geodesic is a spherical general helix about each ``d``."""
    gamma, subject = _as_curve(S, g)
    if H.r == 0:
        return _no_directions(INDICATRIX_HELIX, subject, tol)
    plan = _curve_plan(plan)
    _require_geodesic(S, gamma, tol, plan)
    ts = gamma.sample(plan)
    alpha = gamma.curve()
    frames, bad = _frames(alpha, ts, 2)
    if frames is None:
        return _report(
            INDICATRIX_HELIX, subject, tol, len(ts), hyp="vacuous",
            message=f"tangent indicatrix is stationary at t={bad.t:.6g}",
        )
    beta = tangent_indicatrix(alpha)
    T = np.array([frenet(beta, t).V(1) for t in ts])
    spread, mean = _spread(T @ H.basis.T)
    sph = is_spherical(beta, tol, plan)
    details = {
        "direction_residuals": spread.tolist(),
        "constants": mean.tolist(),
        "spherical_residual": sph.residual,
    }
    return _report(
        INDICATRIX_HELIX, subject, tol, len(ts),
        residual=max(float(spread.max()), sph.residual), details=details,
    )


def check_gauss_image_angle(
    S: Hypersurface, H: HelixDirectionSpace, plan: Optional[SamplePlan] = None, tol: float = TOL
) -> TheoremReport:
    """Gauss-image position vectors keep a constant angle with each ``d`` (fresh samples).

    The helix space is first re-verified on the same fresh samples; if it
    does not belong to ``S`` at all, :class:`VerificationFailed` propagates.
    """
    subject = S.name or "surface"
    if H.r == 0:
        return _no_directions(GAUSS_IMAGE_ANGLE, subject, tol)
    plan = plan if plan is not None else surface_plan(S, H.seed).fresh(salt=3, density=4)
    verify_helix_space(S, H, plan)
    us = plan.box(S.domain)
    dev = np.abs(sample_normals(S, us) @ H.basis.T - H.constants).max(axis=0)
    details = {"direction_residuals": dev.tolist(), "constants": H.constants.tolist()}
    return _report(GAUSS_IMAGE_ANGLE, subject, tol, len(us), residual=float(dev.max()), details=details)


def _gauss_unit_speed(gamma, t):
    """``(beta, beta_s, beta_ss)`` of the Gauss image at ``t`` in arc length of ``beta``."""
    _, N = gamma.series(t, 2)
    b1, b2 = N[1], 2.0 * N[2]
    sp = float(np.linalg.norm(b1))
    if sp < EPS_REG:
        raise NonRegular(f"Gauss image is stationary at t={t:.6g} (|beta'| = {sp:.3g})")
    T = b1 / sp
    return N[0], T, (b2 - (b2 @ T) * T) / sp**2


def check_gauss_image_not_geodesic(
    S: Hypersurface,
    gamma: SurfaceCurve,
    H: HelixDirectionSpace,
    tol: float = TOL,
    plan: Optional[SamplePlan] = None,
    hypothesis_tol: float = HYPOTHESIS_TOL,
    nongeodesic_tol: float = NONGEODESIC_TOL,
) -> TheoremReport:
    """If some ``d_j`` is never tangent to ``M``, the Gauss image is not a great circle.

    Hypothesis: ``|c_j| > hypothesis_tol`` for some basis direction.
    Conclusion: the sphere-tangential part of ``beta_ss`` exceeds
    ``nongeodesic_tol`` somewhere, and ``|<beta_ss, d_j>| <= tol`` for all ``j``.
    The great-circle residual is recorded even when the hypothesis fails.
    """
    gamma, subject = _as_curve(S, gamma)
    if H.r == 0:
        return _no_directions(GAUSS_IMAGE_NOT_GEODESIC, subject, tol)
    ts = gamma.sample(_curve_plan(plan))
    geo_res, dots = 0.0, np.zeros(H.r)
    for t in ts:
        beta, _, acc = _gauss_unit_speed(gamma, t)
        geo_res = max(geo_res, float(np.linalg.norm(acc - (acc @ beta) * beta)))
        dots = np.maximum(dots, np.abs(H.basis @ acc))
    c = np.abs(H.constants)
    details = {
        "constants": H.constants.tolist(),
        "spherical_geodesic_residual": geo_res,
        "nongeodesic_threshold": nongeodesic_tol,
        "direction_residuals": dots.tolist(),
    }
    if c.max() <= hypothesis_tol:
        return _report(
            GAUSS_IMAGE_NOT_GEODESIC, subject, tol, len(ts), hyp="violated", hyp_res=float(c.max()),
            details=details, message="every helix direction is tangent to the surface",
        )
    residual = float(dots.max())
    rep = _report(
        GAUSS_IMAGE_NOT_GEODESIC, subject, tol, len(ts), residual=residual,
        hyp_res=float(c.max()), details=details,
    )
    if geo_res <= nongeodesic_tol:
        rep.conclusion = rep.status = "fail"
        rep.message = "Gauss image is a great circle"
    return rep


def check_gauss_derivative(
    S: Hypersurface, gamma, H: HelixDirectionSpace, tol: float = TOL, plan: Optional[SamplePlan] = None
) -> TheoremReport:
    """Every helix direction is orthogonal to ``beta'`` along the Gauss image."""
    gamma, subject = _as_curve(S, gamma)
    if H.r == 0:
        return _no_directions(GAUSS_DERIVATIVE, subject, tol)
    ts = gamma.sample(_curve_plan(plan))
    worst = np.zeros(H.r)
    for t in ts:
        alpha, N = gamma.series(t, 1)
        if np.linalg.norm(alpha[1]) < EPS_REG:
            raise NonRegular(f"curve singular at t={t:.6g}")
        b1 = N[1]
        nb = float(np.linalg.norm(b1))
        dots = np.abs(H.basis @ b1)
        worst = np.maximum(worst, dots / nb if nb >= EPS_REG else dots)
    details = {"direction_residuals": worst.tolist()}
    return _report(GAUSS_DERIVATIVE, subject, tol, len(ts), residual=float(worst.max()), details=details)


def check_frame_derivative(
    S: Hypersurface, g, H: HelixDirectionSpace, tol: float = TOL, plan: Optional[SamplePlan] = None
) -> TheoremReport:
    """Along a geodesic, ``<V_2', d> = 0`` with ``V_2' = -k_1 V_1 + k_2 V_3``."""
    gamma, subject = _as_curve(S, g)
    if H.r == 0:
        return _no_directions(FRAME_DERIVATIVE, subject, tol)
    plan = _curve_plan(plan)
    _require_geodesic(S, gamma, tol, plan)
    ts = gamma.sample(plan)
    frames, bad = _frames(gamma.curve(), ts, 2)
    if frames is None:
        return _report(
            FRAME_DERIVATIVE, subject, tol, len(ts), hyp="vacuous",
            message=f"principal normal undefined (k1 = 0) at t={bad.t:.6g}",
        )
    worst = np.zeros(H.r)
    for f in frames:
        dV2 = -f.k(1) * f.V(1)
        if f.valid_depth >= 3:
            dV2 = dV2 + f.k(2) * f.V(3)
        worst = np.maximum(worst, np.abs(H.basis @ (f.speed * dV2)))
    details = {"direction_residuals": worst.tolist()}
    return _report(FRAME_DERIVATIVE, subject, tol, len(ts), residual=float(worst.max()), details=details)


def decomposition_hypothesis(
    S: Hypersurface,
    gamma: SurfaceCurve,
    H: HelixDirectionSpace,
    plan: Optional[SamplePlan] = None,
    hypothesis_tol: float = HYPOTHESIS_TOL,
    angle_margin: float = ANGLE_MARGIN,
):
    """Whether some basis ``d_j = cos(theta) N + sin(theta) V_1`` along ``gamma`` with ``theta`` away from ``0, pi/2``.

    Returns ``(satisfied, best distance, per-direction details)``.
    """
    ts = gamma.sample(_curve_plan(plan))
    r = H.r
    dist = np.zeros(r)
    theta_lo = np.full(r, np.inf)
    theta_hi = np.zeros(r)
    for t in ts:
        alpha, N = gamma.series(t, 1)
        sp = float(np.linalg.norm(alpha[1]))
        if sp < EPS_REG:
            raise NonRegular(f"curve singular at t={t:.6g}")
        V1 = alpha[1] / sp
        a, b = H.basis @ V1, H.basis @ N[0]
        resid = H.basis - np.outer(a, V1) - np.outer(b, N[0])
        dist = np.maximum(dist, np.linalg.norm(resid, axis=1))
        theta = np.arctan2(np.abs(a), np.abs(b))
        theta_lo = np.minimum(theta_lo, theta)
        theta_hi = np.maximum(theta_hi, theta)
    angle_ok = (theta_lo > angle_margin) & (theta_hi < math.pi / 2 - angle_margin)
    good = (dist <= hypothesis_tol) & angle_ok
    info = {
        "decomposition_residuals": dist.tolist(),
        "theta_min": theta_lo.tolist(),
        "theta_max": theta_hi.tolist(),
        "angle_admissible": angle_ok.tolist(),
    }
    best = float(dist[good].min()) if good.any() else float(dist.min())
    return bool(good.any()), best, info, len(ts)


def check_asymptotic(
    S: Hypersurface,
    gamma: SurfaceCurve,
    H: HelixDirectionSpace,
    tol: float = TOL,
    plan: Optional[SamplePlan] = None,
    hypothesis_tol: float = HYPOTHESIS_TOL,
    angle_margin: float = ANGLE_MARGIN,
) -> TheoremReport:
    """A helix direction lying in ``span{V_1, N}`` at a generic angle forces an asymptotic curve."""
    gamma, subject = _as_curve(S, gamma)
    if H.r == 0:
        return _no_directions(ASYMPTOTIC, subject, tol)
    ok, hres, info, m = decomposition_hypothesis(S, gamma, H, plan, hypothesis_tol, angle_margin)
    if not ok:
        return _report(ASYMPTOTIC, subject, tol, m, hyp="violated", hyp_res=hres, details=info,
                       message="no basis direction decomposes along (N, V1) at an admissible angle")
    v = is_asymptotic(S, gamma, tol, plan)
    return _report(ASYMPTOTIC, subject, tol, m, residual=v.residual, hyp_res=hres, details=info)


def _line_corollary(check, S, gamma, H, tol, plan, hypothesis_tol, angle_margin, precondition):
    gamma, subject = _as_curve(S, gamma)
    pre = precondition(S, gamma, tol, plan)
    if not pre:
        raise PreconditionError(f"{check}: precondition fails (residual {pre.residual:.3g} > {tol:.3g})")
    if H.r == 0:
        return _no_directions(check, subject, tol)
    ok, hres, info, m = decomposition_hypothesis(S, gamma, H, plan, hypothesis_tol, angle_margin)
    if not ok:
        return _report(check, subject, tol, m, hyp="violated", hyp_res=hres, details=info,
                       message="no basis direction decomposes along (N, V1) at an admissible angle")
    line = is_line(gamma.curve(), tol, _curve_plan(plan))
    info["precondition_residual"] = pre.residual
    return _report(check, subject, tol, m, residual=line.residual, hyp_res=hres, details=info)


def check_geodesic_line(
    S, gamma, H, tol: float = TOL, plan=None, hypothesis_tol: float = HYPOTHESIS_TOL, angle_margin: float = ANGLE_MARGIN
) -> TheoremReport:
    """A geodesic meeting the decomposition hypothesis is a straight line.

    Raises :class:`PreconditionError` if ``gamma`` is not a geodesic.
    """
    return _line_corollary(GEODESIC_LINE, S, gamma, H, tol, plan, hypothesis_tol, angle_margin, is_geodesic)


def check_curvature_line(
    S, gamma, H, tol: float = TOL, plan=None, hypothesis_tol: float = HYPOTHESIS_TOL, angle_margin: float = ANGLE_MARGIN
) -> TheoremReport:
    """A line of curvature meeting the decomposition hypothesis is a straight line.

    Raises :class:`PreconditionError` if ``gamma`` is not a line of curvature.
    """
    return _line_corollary(
        CURVATURE_LINE, S, gamma, H, tol, plan, hypothesis_tol, angle_margin, is_line_of_curvature
    )


# suite ---------------------------------------------------------------------


@dataclass
class GeodesicSpec:
    name: str
    u0: Sequence[float]
    direction: Sequence[float]
    length: float = 1.0
    step: float = 1e-3
    parametric: bool = True


@dataclass
class SuiteConfig:
    tol: float = TOL
    hypothesis_tol: float = HYPOTHESIS_TOL
    seed: int = 0
    samples: int = 64
    geodesics: Optional[List[GeodesicSpec]] = None
    curves: Optional[List[SurfaceCurve]] = None

    def plan(self) -> SamplePlan:
        return SamplePlan(self.samples, 16, self.seed)


def default_geodesics(S: Hypersurface, length: float = 1.0) -> List[GeodesicSpec]:
    """Three geodesics from the box center in generic parameter directions."""
    u0 = S.center()
    m = S.n_params
    specs = []
    for k, phi in enumerate((0.4, 1.2, 2.3)):
        d = np.array([math.cos(phi + 0.9 * i) for i in range(m)])
        specs.append(GeodesicSpec(f"geodesic-{k + 1}", u0.tolist(), (d / np.linalg.norm(d)).tolist(), length))
    return specs


def default_curves(S: Hypersurface) -> List[SurfaceCurve]:
    """Coordinate curves through the box center, a quarter box wide."""
    c = S.center()
    curves = []
    for i, (lo, hi) in enumerate(S.domain):
        half = 0.25 * (hi - lo)
        comps = [repr(float(c[j])) if j != i else f"{float(c[i])!r} + t" for j in range(S.n_params)]
        curves.append(SurfaceCurve.from_expressions(S, comps, (-half, half), name=f"u{i + 1}-curve"))
    return curves


def _guard(fn, check, subject, tol):
    """Run one check; turn degeneracies into vacuous reports and other failures into errors."""
    try:
        return fn()
    except (DegenerateFrame, NonRegular) as exc:
        return _report(check, subject, tol, 0, hyp="vacuous", message=str(exc))
    except PreconditionError:
        return None
    except VerificationFailed:
        # a helix space that does not belong to S invalidates the whole report
        raise
    except (GeometryError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return TheoremReport(check, subject, "satisfied", "not_evaluated", "error", None, tol, 0,
                             message=f"{type(exc).__name__}: {exc}")


def run_suite(S: Hypersurface, config: Optional[SuiteConfig] = None, H: Optional[HelixDirectionSpace] = None):
    """Run every applicable check on ``S``; returns ``(H, reports)`` in canonical order."""
    cfg = config or SuiteConfig()
    tol, htol = cfg.tol, cfg.hypothesis_tol
    plan = cfg.plan()
    if H is None:
        H = helix_directions(S, surface_plan(S, cfg.seed))
    specs = cfg.geodesics if cfg.geodesics is not None else default_geodesics(S)
    curves = cfg.curves if cfg.curves is not None else default_curves(S)
    curves = [c if c.surface is S else c.with_surface(S) for c in curves]
    reports = []

    if H.r == 0:
        geodesic_only = (GEODESIC_SLANT_HELIX, INDICATRIX_HELIX, FRAME_DERIVATIVE)
        names = [sp.name for sp in specs]
        for check in CHECK_ORDER:
            if check == GAUSS_IMAGE_ANGLE:
                subjects = [S.name or "surface"]
            else:
                subjects = names if check in geodesic_only else names + [c.name for c in curves]
            reports.extend(_no_directions(check, subj, tol) for subj in subjects)
        return H, reports

    reports.append(_guard(lambda: check_gauss_image_angle(S, H, None, tol), GAUSS_IMAGE_ANGLE, S.name, tol))

    traces = []
    for spec in specs:
        try:
            g = integrate_geodesic(S, spec.u0, spec.direction, spec.length, spec.step, parametric=spec.parametric)
            traces.append((spec.name, trace_to_surface_curve(g, name=spec.name)))
        except (GeometryError, ValueError) as exc:
            for check in (GEODESIC_SLANT_HELIX, INDICATRIX_HELIX, FRAME_DERIVATIVE):
                reports.append(TheoremReport(check, spec.name, "satisfied", "not_evaluated", "error", None, tol, 0,
                                             message=f"{type(exc).__name__}: {exc}"))

    for name, gc in traces:
        for check, fn in (
            (GEODESIC_SLANT_HELIX, check_geodesic_slant_helix),
            (INDICATRIX_HELIX, check_indicatrix_helix),
            (FRAME_DERIVATIVE, check_frame_derivative),
        ):
            reports.append(_guard(lambda fn=fn: fn(S, gc, H, tol, plan), check, name, tol))

    for gc in [gc for _, gc in traces] + curves:
        name = gc.name
        reports.append(_guard(
            lambda gc=gc: check_gauss_image_not_geodesic(S, gc, H, tol, plan, htol), GAUSS_IMAGE_NOT_GEODESIC, name, tol
        ))
        reports.append(_guard(lambda gc=gc: check_gauss_derivative(S, gc, H, tol, plan), GAUSS_DERIVATIVE, name, tol))
        reports.append(_guard(lambda gc=gc: check_asymptotic(S, gc, H, tol, plan, htol), ASYMPTOTIC, name, tol))
        reports.append(_guard(lambda gc=gc: check_geodesic_line(S, gc, H, tol, plan, htol), GEODESIC_LINE, name, tol))
        reports.append(_guard(lambda gc=gc: check_curvature_line(S, gc, H, tol, plan, htol), CURVATURE_LINE, name, tol))

    reports = [r for r in reports if r is not None]
    order = {c: i for i, c in enumerate(CHECK_ORDER)}
    subjects = {}
    for r in reports:
        subjects.setdefault(r.subject, len(subjects))
    reports.sort(key=lambda r: (order[r.check], subjects[r.subject]))
    return H, reports


def suite_exit_code(reports) -> int:
    """``1`` if any evaluated check failed, ``3`` if any errored, else ``0``."""
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return 1
    if "error" in statuses:
        return 3
    return 0
