"""Parametric hypersurface patches, their Gauss map and surface-curve tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .curve import EPS_REG, Curve, Verdict, default_plan
from .errors import NonRegular, RankDeficient
from .expr import Jet, JetProgram, compile_hessian, parse
from .linalg import generalized_cross
from .sampling import SamplePlan

SINGULAR_MARGIN = 1e-3


def default_variables(n_params: int):
    return [f"u{i + 1}" for i in range(n_params)]


def shrink_domain(domain, singular=(), margin=SINGULAR_MARGIN):
    """Move box faces away from declared singular loci ``(param, value)``."""
    box = [list(map(float, b)) for b in domain]
    for param, value in singular:
        lo, hi = box[param]
        if value <= lo + margin:
            box[param][0] = max(lo, value + margin)
        elif value >= hi - margin:
            box[param][1] = min(hi, value - margin)
        else:
            raise ValueError(
                f"singular locus u{param + 1} = {value} lies inside the domain; split the patch"
            )
    return [tuple(b) for b in box]


@dataclass
class SurfacePoint:
    u: np.ndarray
    position: np.ndarray
    tangents: np.ndarray  # n x (n-1), columns dM/du_j
    normal: np.ndarray


class Hypersurface:
    """Patch ``M(u_1..u_{n-1})`` in E^n given by component expressions.

    The unit normal is the normalized generalized cross product of the
    Jacobian columns, so ``det[M_u1 ... M_u(n-1) N] > 0``; ``orientation=-1``
    flips it.  An optional affine map ``x -> A x + b`` is applied after
    evaluation (used for rigid-motion and scaling studies).
    """

    def __init__(
        self,
        components: Sequence,
        domain,
        variables: Optional[Sequence[str]] = None,
        name: str = "",
        singular=(),
        orientation: int = 1,
        linear=None,
        offset=None,
    ):
        n = len(components)
        if n < 3:
            raise ValueError("hypersurfaces need ambient dimension n >= 3")
        self.dim = n
        self.variables = list(variables) if variables is not None else default_variables(n - 1)
        if len(self.variables) != n - 1:
            raise ValueError(f"expected {n - 1} parameters, got {len(self.variables)}")
        self.components = list(components)
        self.exprs = [parse(c, self.variables) if isinstance(c, str) else c for c in components]
        if len(domain) != n - 1:
            raise ValueError("domain needs one interval per parameter")
        self.raw_domain = [tuple(map(float, b)) for b in domain]
        self.singular = [(int(p), float(v)) for p, v in singular]
        self.domain = shrink_domain(self.raw_domain, self.singular)
        self.name = name
        self.orientation = 1 if orientation >= 0 else -1
        self.linear = np.eye(n) if linear is None else np.asarray(linear, dtype=float)
        self.offset = np.zeros(n) if offset is None else np.asarray(offset, dtype=float)
        self._hess = compile_hessian(self.exprs, self.variables)
        self._program = JetProgram(self.exprs)
        self._cache = {}

    @property
    def n_params(self) -> int:
        return self.dim - 1

    def transformed(self, A, b=None) -> "Hypersurface":
        """Image under ``x -> A x + b`` (composes with any existing map)."""
        A = np.asarray(A, dtype=float)
        b = np.zeros(self.dim) if b is None else np.asarray(b, dtype=float)
        return Hypersurface(
            self.components,
            self.raw_domain,
            self.variables,
            name=self.name,
            singular=self.singular,
            orientation=self.orientation,
            linear=A @ self.linear,
            offset=A @ self.offset + b,
        )

    def flipped(self) -> "Hypersurface":
        s = self.transformed(np.eye(self.dim))
        s.orientation = -self.orientation
        return s

    def contains(self, u, slack: float = 0.0) -> bool:
        return all(lo - slack <= x <= hi + slack for x, (lo, hi) in zip(u, self.domain))

    def center(self):
        return np.array([0.5 * (lo + hi) for lo, hi in self.domain])

    # pointwise differential data -----------------------------------------

    def derivatives(self, u, cache: bool = True):
        """``(M(u), Jacobian[n, n-1], second derivatives[n, n-1, n-1])``."""
        key = tuple(float(x) for x in u)
        hit = self._cache.get(key) if cache else None
        if hit is not None:
            return hit
        v, g, h = self._hess(key)
        m = self.n_params
        out = (
            self.linear @ v + self.offset,
            self.linear @ g,
            (self.linear @ h.reshape(self.dim, m * m)).reshape(self.dim, m, m),
        )
        if not cache:
            return out
        if len(self._cache) > 16384:
            self._cache.clear()
        self._cache[key] = out
        return out

    def point(self, u):
        return self.derivatives(u)[0]

    def jacobian(self, u):
        J = self.derivatives(u)[1]
        smin = np.linalg.svd(J, compute_uv=False)[-1]
        if smin < EPS_REG:
            raise RankDeficient(f"Jacobian rank-deficient at u={list(u)} (sigma_min={smin:.3g})")
        return J

    def unit_normal(self, u):
        J = self.jacobian(u)
        w = generalized_cross(J.T)
        return self.orientation * w / np.linalg.norm(w)

    def surface_point(self, u) -> SurfacePoint:
        u = np.asarray(u, dtype=float)
        return SurfacePoint(u, self.point(u), self.jacobian(u), self.unit_normal(u))

    def metric(self, u):
        J = self.jacobian(u)
        return J.T @ J

    def second_fundamental_form(self, u):
        H = self.derivatives(u)[2]
        return np.einsum("aij,a->ij", H, self.unit_normal(u))

    def shape_operator(self, u):
        """Matrix of ``-dN`` in the tangent basis (Weingarten map ``g^-1 h``)."""
        return np.linalg.solve(self.metric(u), self.second_fundamental_form(u))

    def principal_curvatures(self, u):
        return np.sort(np.linalg.eigvals(self.shape_operator(u)).real)

    def christoffel(self, u, cache: bool = True):
        """``Gamma[k, i, j]`` from first derivatives of the induced metric."""
        _, J, H = self.derivatives(u, cache)
        g = J.T @ J
        # dg[l, i, j] = d g_ij / du_l
        dg = np.einsum("ail,aj->lij", H, J) + np.einsum("ai,ajl->lij", J, H)
        # first[l, i, j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
        first = 0.5 * (np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg)
        return np.einsum("kl,lij->kij", np.linalg.inv(g), first)

    # series along a parameter curve --------------------------------------

    def along(self, u_series):
        """Series of ``M(u(t))`` and of the Jacobian columns along ``u(t)``.

        ``u_series`` is ``(k+1, n-1)`` Taylor coefficients.  Returns
        ``(alpha[k+1, n], J[k+1, n, n-1])``.
        """
        u_series = np.asarray(u_series, dtype=float)
        m = self.n_params
        k = u_series.shape[0] - 1
        bindings = {}
        for j, name in enumerate(self.variables):
            tangents = np.zeros((m, k + 1))
            tangents[j, 0] = 1.0
            bindings[name] = Jet(u_series[:, j], tangents)
        out = [j.data for j in self._program.run(bindings)]
        data = np.stack(out, axis=0)  # [n, 1+m, k+1]
        alpha = (self.linear @ data[:, 0, :]).T
        alpha[0] += self.offset
        J = np.einsum("ab,bjk->kaj", self.linear, data[:, 1:, :])
        return alpha, J

    def normal_series(self, J):
        """Series of the unit normal from the Jacobian series (order by order)."""
        J = np.asarray(J, dtype=float)
        k = J.shape[0] - 1
        J0 = J[0]
        smin = np.linalg.svd(J0, compute_uv=False)[-1]
        if smin < EPS_REG:
            raise RankDeficient(f"Jacobian rank-deficient along curve (sigma_min={smin:.3g})")
        w = generalized_cross(J0.T)
        N = np.zeros((k + 1, self.dim))
        N[0] = self.orientation * w / np.linalg.norm(w)
        A = np.vstack([J0.T, N[0]])
        for p in range(1, k + 1):
            rhs = np.empty(self.dim)
            rhs[:-1] = -sum(J[p - a].T @ N[a] for a in range(p))
            rhs[-1] = -0.5 * sum(N[a] @ N[p - a] for a in range(1, p))
            N[p] = np.linalg.solve(A, rhs)
        return N


class SurfaceCurve:
    """Curve ``t -> u(t)`` in the parameter box with induced curve ``M(u(t))``.

    ``u_taylor(t, order)`` returns ``(order+1, n-1)`` Taylor coefficients.
    """

    def __init__(self, surface: Hypersurface, u_taylor: Callable, domain, name: str = "", u_components=None):
        self.surface = surface
        self._u_taylor = u_taylor
        self.domain = (float(domain[0]), float(domain[1]))
        self.name = name
        self.u_components = u_components
        self._cache = {}
        self._ambient = None
        self._gauss = None

    @classmethod
    def from_expressions(cls, surface: Hypersurface, u_components, domain, variable: str = "t", name: str = ""):
        if len(u_components) != surface.n_params:
            raise ValueError(f"need {surface.n_params} parameter expressions")
        program = JetProgram([parse(c, [variable]) if isinstance(c, str) else c for c in u_components])

        def u_taylor(t, order):
            jets = program.run({variable: Jet.variable(t, order)})
            return np.stack([j.coeffs for j in jets], axis=1)

        return cls(surface, u_taylor, domain, name=name, u_components=list(u_components))

    def with_surface(self, surface: Hypersurface) -> "SurfaceCurve":
        """Same parameter curve on another patch (e.g. a moved copy)."""
        return SurfaceCurve(surface, self._u_taylor, self.domain, self.name, self.u_components)

    def u_taylor(self, t, order):
        return np.asarray(self._u_taylor(float(t), int(order)), dtype=float)

    def u(self, t):
        return self.u_taylor(t, 0)[0]

    def series(self, t, order):
        """``(alpha series, normal series)`` at ``t``, both ``(order+1, n)``."""
        # one evaluation per t serves every check: compute at a fixed floor order and truncate
        full = max(int(order), self.surface.dim + 1)
        key = (float(t), full)
        hit = self._cache.get(key)
        if hit is not None:
            return hit[0][: order + 1], hit[1][: order + 1]
        us = self.u_taylor(t, full)
        if not self.surface.contains(us[0], slack=1e-12):
            raise ValueError(f"surface curve leaves the parameter domain at t={t}")
        alpha, J = self.surface.along(us)
        out = (alpha, self.surface.normal_series(J))
        for a in out:
            a.flags.writeable = False
        if len(self._cache) > 8192:
            self._cache.clear()
        self._cache[key] = out
        return out[0][: order + 1], out[1][: order + 1]

    def curve(self) -> Curve:
        """Induced ambient curve ``alpha(t) = M(u(t))``."""
        if self._ambient is None:
            self._ambient = Curve(
                self.surface.dim, lambda t, k: self.series(t, k)[0], self.domain, name=self.name
            )
        return self._ambient

    def gauss_curve(self) -> Curve:
        """Gauss image ``beta(t) = N(u(t))`` on the unit sphere."""
        if self._gauss is None:
            self._gauss = Curve(
                self.surface.dim,
                lambda t, k: self.series(t, k)[1],
                self.domain,
                name=f"{self.name}|gauss" if self.name else "",
            )
        return self._gauss

    def sample(self, plan: Optional[SamplePlan] = None):
        return default_plan(plan).interval(*self.domain)


def gauss_map_curve(S: Hypersurface, gamma: SurfaceCurve) -> Curve:
    """Image of ``gamma`` under the Gauss transformation of ``S``."""
    if gamma.surface is not S:
        gamma = gamma.with_surface(S)
    return gamma.gauss_curve()


def _velocity(alpha, t):
    a1 = alpha[1]
    sp = float(np.linalg.norm(a1))
    if sp < EPS_REG:
        raise NonRegular(f"surface curve singular at t={t}")
    return a1, sp


def geodesic_residual(gamma: SurfaceCurve, t) -> float:
    """Norm of the surface-tangential part of the unit-speed acceleration."""
    alpha, N = gamma.series(t, 2)
    a1, sp = _velocity(alpha, t)
    a2 = 2.0 * alpha[2]
    T = a1 / sp
    acc = (a2 - (a2 @ T) * T) / sp**2
    tang = acc - (acc @ N[0]) * N[0]
    return float(np.linalg.norm(tang))


def is_geodesic(S: Hypersurface, gamma: SurfaceCurve, tol: float = 1e-6, plan: Optional[SamplePlan] = None) -> Verdict:
    if gamma.surface is not S:
        gamma = gamma.with_surface(S)
    worst = max(geodesic_residual(gamma, t) for t in gamma.sample(plan))
    return Verdict(worst <= tol, worst)


def is_asymptotic(S: Hypersurface, gamma: SurfaceCurve, tol: float = 1e-6, plan: Optional[SamplePlan] = None) -> Verdict:
    """Normal curvature ``|<N', alpha'>| / |alpha'|^2`` vanishes along ``gamma``."""
    if gamma.surface is not S:
        gamma = gamma.with_surface(S)
    worst = 0.0
    for t in gamma.sample(plan):
        alpha, N = gamma.series(t, 1)
        a1, sp = _velocity(alpha, t)
        worst = max(worst, abs(float(N[1] @ a1)) / sp**2)
    return Verdict(worst <= tol, worst)


def is_line_of_curvature(
    S: Hypersurface, gamma: SurfaceCurve, tol: float = 1e-6, plan: Optional[SamplePlan] = None
) -> Verdict:
    """Rodrigues test: ``N'`` parallel to ``alpha'`` (residual per unit speed)."""
    if gamma.surface is not S:
        gamma = gamma.with_surface(S)
    worst = 0.0
    for t in gamma.sample(plan):
        alpha, N = gamma.series(t, 1)
        a1, sp = _velocity(alpha, t)
        mu = float(N[1] @ a1) / sp**2
        worst = max(worst, float(np.linalg.norm(N[1] - mu * a1)) / sp)
    return Verdict(worst <= tol, worst)


def sample_normals(S: Hypersurface, us):
    """Unit normals at each parameter row of ``us``."""
    return np.array([S.unit_normal(u) for u in us])
