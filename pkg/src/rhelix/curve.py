"""Parametric curves in E^n and their Frenet apparatus.

Every :class:`Curve` is backed by a *Taylor function* ``(t, order) ->
coefficients[order + 1, n]`` so derivatives of any order come out exact to
roundoff: expression curves evaluate Taylor jets, derived curves (tangent
indicatrix, unit-speed reparametrization, surface curves, Gauss images)
compose jets of their parents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import DegenerateFrame, NonRegular
from .expr import Jet, JetProgram, compose, parse
from .linalg import canonical_basis, complete_frame, generalized_cross, null_space
from .sampling import SamplePlan

EPS_REG = 1e-8
EPS_DEG = 1e-7

_FACT = [float(math.factorial(j)) for j in range(40)]


def series_to_jets(coeffs):
    """Columns of a ``(k+1, n)`` coefficient array as a list of jets."""
    coeffs = np.asarray(coeffs, dtype=float)
    return [Jet(coeffs[:, i]) for i in range(coeffs.shape[1])]


def jets_to_series(jets):
    return np.stack([j.coeffs for j in jets], axis=1)


def differentiate_series(coeffs):
    """Taylor coefficients of the derivative (one order lower)."""
    coeffs = np.asarray(coeffs, dtype=float)
    j = np.arange(1, coeffs.shape[0], dtype=float)
    return coeffs[1:] * j[:, None]


def normalize_series(coeffs):
    """Series of ``v / |v|`` for a vector-valued series ``v``."""
    jets = series_to_jets(coeffs)
    sq = jets[0] * jets[0]
    for j in jets[1:]:
        sq = sq + j * j
    inv = sq.sqrt().reciprocal()
    return jets_to_series([j * inv for j in jets])


class Curve:
    """Immutable parametric curve ``t -> alpha(t)`` in E^n on ``[t0, t1]``."""

    def __init__(self, dim: int, taylor: Callable, domain, name: str = "", components=None):
        if dim < 2:
            raise ValueError("curves live in E^n with n >= 2")
        self.dim = int(dim)
        self._taylor = taylor
        self.domain = (float(domain[0]), float(domain[1]))
        self.name = name
        self.components = components
        self._cache = {}

    @classmethod
    def from_expressions(cls, components: Sequence[str], domain, variable: str = "t", name: str = ""):
        exprs = [parse(c, [variable]) if isinstance(c, str) else c for c in components]
        program = JetProgram(exprs)

        def taylor(t, order):
            jets = program.run({variable: Jet.variable(t, order)})
            return np.stack([j.coeffs for j in jets], axis=1)

        return cls(len(exprs), taylor, domain, name=name, components=list(components))

    def taylor(self, t: float, order: int):
        """Taylor coefficients ``alpha^(j)(t) / j!`` for ``j = 0..order``."""
        key = (float(t), int(order))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = np.asarray(self._taylor(float(t), int(order)), dtype=float)
        if len(self._cache) > 8192:
            self._cache.clear()
        self._cache[key] = out
        return out

    def derivatives(self, t: float, order: int):
        """``[alpha(t), alpha'(t), ..., alpha^(order)(t)]`` as an array."""
        c = self.taylor(t, order)
        return c * np.array(_FACT[: order + 1])[:, None]

    def __call__(self, t):
        return self.taylor(t, 0)[0]

    def speed(self, t: float) -> float:
        return float(np.linalg.norm(self.taylor(t, 1)[1]))

    def transformed(self, A, b=None) -> "Curve":
        """Image under the affine map ``x -> A x + b``."""
        A = np.asarray(A, dtype=float)
        b = np.zeros(A.shape[0]) if b is None else np.asarray(b, dtype=float)
        parent = self

        def taylor(t, order):
            c = parent.taylor(t, order) @ A.T
            c[0] += b
            return c

        return Curve(A.shape[0], taylor, self.domain, name=self.name)

    def __repr__(self):
        return f"Curve(dim={self.dim}, domain={self.domain}, name={self.name!r})"


@dataclass
class FrenetData:
    t: float
    frame: np.ndarray  # rows V_1..V_n
    curvatures: np.ndarray  # k_1..k_{n-1}; nan where absent
    valid_depth: int
    speed: float
    derivatives: np.ndarray = field(repr=False, default=None)

    def V(self, i: int):
        """Frame vector ``V_i`` (1-based)."""
        if i > self.valid_depth:
            raise DegenerateFrame(i)
        return self.frame[i - 1]

    def k(self, i: int) -> float:
        return float(self.curvatures[i - 1])


def frenet(c: Curve, t: float) -> FrenetData:
    """Frenet frame and curvatures at ``t``.

    ``V_1..V_{n-1}`` come from Gram-Schmidt on ``alpha', ..., alpha^(n-1)``,
    ``V_n`` from the generalized cross product (positive orientation).
    With ``e_i`` the Gram-Schmidt residuals, ``k_i = |e_{i+1}| / (|e_i| |alpha'|)``
    and the last curvature takes the sign of ``<alpha^(n), V_n>``.
    A stage whose residual is below ``EPS_DEG`` (relative to ``|alpha^(m)|``
    or to ``|e_{m-1}| |alpha'|``) stops the construction: ``valid_depth``
    becomes ``m - 1``, ``k_{m-1} = 0`` and higher curvatures are ``nan``.
    """
    n = c.dim
    D = c.derivatives(t, n)
    speed = float(np.linalg.norm(D[1]))
    if not speed > EPS_REG:
        raise NonRegular(f"|alpha'({t})| = {speed:.3g} below regularity threshold")
    V = []
    norms = []
    k = np.full(n - 1, np.nan)
    valid = n
    for m in range(1, n + 1):
        d = D[m]
        e = d.copy()
        for _ in range(2):
            for v in V:
                e -= (e @ v) * v
        if m == n:
            w = generalized_cross(np.array(V))
            vn = w / np.linalg.norm(w)
            comp = float(e @ vn)
            ref = max(np.linalg.norm(d), norms[-1] * speed)
            if abs(comp) <= EPS_DEG * ref:
                valid = n - 1
                k[n - 2] = 0.0
            else:
                k[n - 2] = comp / (norms[-1] * speed)
            V.append(vn)
            break
        en = float(np.linalg.norm(e))
        if m > 1:
            ref = max(np.linalg.norm(d), norms[-1] * speed)
            if en <= EPS_DEG * ref:
                valid = m - 1
                k[m - 2] = 0.0
                break
            k[m - 2] = en / (norms[-1] * speed)
        V.append(e / en)
        norms.append(en)
    frame = complete_frame(np.array(V), n)
    return FrenetData(float(t), frame, k, valid, speed, D)


def frenet_ode_residual(c: Curve, t: float, h: float = 1e-4) -> float:
    """Max deviation of central-difference ``V_i'`` from ``v (-k_{i-1} V_{i-1} + k_i V_{i+1})``."""
    f0, fm, fp = frenet(c, t), frenet(c, t - h), frenet(c, t + h)
    depth = min(f0.valid_depth, fm.valid_depth, fp.valid_depth)
    if depth < c.dim:
        raise DegenerateFrame(depth + 1, f"frame only valid to depth {depth} near t={t:.6g}")
    V, k, n = f0.frame, f0.curvatures, c.dim
    worst = 0.0
    for i in range(n):
        fd = (fp.frame[i] - fm.frame[i]) / (2.0 * h)
        rhs = np.zeros(n)
        if i > 0:
            rhs -= k[i - 1] * V[i - 1]
        if i < n - 1:
            rhs += k[i] * V[i + 1]
        worst = max(worst, float(np.abs(fd - f0.speed * rhs).max()))
    return worst


def arc_length(c: Curve, a: float, b: float) -> float:
    """Length of ``c`` over ``[a, b]`` by adaptive quadrature (abs. tol 1e-10)."""

    def integrand(t):
        s = c.speed(t)
        if s < EPS_REG:
            raise NonRegular(f"|alpha'({t})| = {s:.3g} below regularity threshold")
        return s

    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    val, _ = integrate.quad(integrand, a, b, epsabs=1e-10, epsrel=1e-13, limit=400)
    return sign * val


def unit_speed(c: Curve) -> Curve:
    """Arc-length reparametrization ``sigma(s) = alpha(t(s))`` on ``[0, L]``.

    ``t(s)`` is found by bracketed root finding on the arc length; the
    Taylor series of ``t`` about that point solves ``dt/ds = 1/|alpha'(t)|``
    order by order (Picard iteration on jets).
    """
    t0, t1 = c.domain
    total = arc_length(c, t0, t1)
    knots = np.linspace(t0, t1, 33)
    cum = np.concatenate([[0.0], np.cumsum([arc_length(c, a, b) for a, b in zip(knots[:-1], knots[1:])])])

    def invert(s):
        if s <= 0.0:
            return t0
        if s >= cum[-1]:
            return t1
        i = int(np.searchsorted(cum, s, side="right")) - 1
        i = min(max(i, 0), len(knots) - 2)
        lo, hi = knots[i], knots[i + 1]
        base = cum[i]
        return optimize.brentq(lambda t: base + arc_length(c, lo, t) - s, lo, hi, xtol=1e-15, rtol=1e-15)

    def taylor(s, order):
        t = invert(s)
        K = order
        A = c.taylor(t, K + 1)
        A1 = differentiate_series(A)
        sp = float(np.linalg.norm(A1[0]))
        if sp < EPS_REG:
            raise NonRegular("unit-speed reparametrization through a singular point")
        delta = Jet(np.r_[0.0, 1.0 / sp, np.zeros(max(K - 1, 0))][: K + 1])
        for _ in range(K):
            v = [compose(A1[:, i], delta) for i in range(c.dim)]
            sq = v[0] * v[0]
            for x in v[1:]:
                sq = sq + x * x
            inv = sq.sqrt().reciprocal().coeffs
            integ = np.zeros(K + 1)
            integ[1:] = inv[:K] / np.arange(1, K + 1)
            delta = Jet(integ)
        return np.stack([compose(A[: K + 1, i], delta).coeffs for i in range(c.dim)], axis=1)

    return Curve(c.dim, taylor, (0.0, total), name=f"{c.name}|unit-speed" if c.name else "")


def tangent_indicatrix(c: Curve) -> Curve:
    """``beta(t) = alpha'(t) / |alpha'(t)|`` on the unit sphere."""

    def taylor(t, order):
        A1 = differentiate_series(c.taylor(t, order + 1))
        if np.linalg.norm(A1[0]) < EPS_REG:
            raise NonRegular(f"|alpha'({t})| below regularity threshold")
        return normalize_series(A1)

    return Curve(c.dim, taylor, c.domain, name=f"{c.name}|indicatrix" if c.name else "")


def default_plan(plan: Optional[SamplePlan]) -> SamplePlan:
    return plan if plan is not None else SamplePlan()


@dataclass
class Verdict:
    """Boolean classification with its worst residual."""

    ok: bool
    residual: float

    def __bool__(self):
        return bool(self.ok)

    def __iter__(self):
        return iter((self.ok, self.residual))


def is_spherical(c: Curve, tol: float = 1e-10, plan: Optional[SamplePlan] = None) -> Verdict:
    """Whether ``max | |alpha(t)| - 1 | <= tol`` over the sample plan."""
    ts = default_plan(plan).interval(*c.domain)
    dev = max(abs(np.linalg.norm(c(t)) - 1.0) for t in ts)
    return Verdict(bool(dev <= tol), float(dev))


def is_line(c: Curve, tol: float = 1e-8, plan: Optional[SamplePlan] = None) -> Verdict:
    """True iff the first curvature stays below ``tol`` (or the frame never leaves depth 1)."""
    ts = default_plan(plan).interval(*c.domain)
    worst = 0.0
    for t in ts:
        f = frenet(c, t)
        if f.valid_depth >= 2:
            worst = max(worst, f.k(1))
    return Verdict(bool(worst <= tol), float(worst))


@dataclass
class SlantHelixSpace:
    """Directions ``X`` with ``<V_level, X>`` constant along the curve."""

    level: int
    basis: np.ndarray
    constants: np.ndarray  # cos(phi) per basis direction
    residuals: np.ndarray
    orthogonal: np.ndarray  # phi == pi/2 flags
    tolerance: float
    sv_spectrum: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def angles(self):
        return np.arccos(np.clip(self.constants, -1.0, 1.0))


def frame_samples(c: Curve, level: int, ts):
    rows = []
    for t in ts:
        f = frenet(c, t)
        if f.valid_depth < level:
            raise DegenerateFrame(level, f"V_{level} undefined at t={t:.6g} (valid depth {f.valid_depth})")
        rows.append(f.frame[level - 1])
    return np.array(rows)


def slant_helix_space(
    c: Curve, level: int, plan: Optional[SamplePlan] = None, tol: float = 1e-6
) -> SlantHelixSpace:
    """Space of fixed directions making a constant angle with ``V_level``.

    Null space (SVD, relative cutoff ``tol``) of the differences
    ``V_level(t_j) - V_level(t_1)`` over the sample plan.  ``level = 1``
    gives general-helix axes, ``level = n`` the V_n-slant-helix axes.
    """
    if not 1 <= level <= c.dim:
        raise ValueError(f"level must be in 1..{c.dim}")
    ts = default_plan(plan).interval(*c.domain)
    Vs = frame_samples(c, level, ts)
    basis, sv = null_space(Vs[1:] - Vs[0], rtol=tol)
    basis = canonical_basis(basis) if basis.shape[0] else basis
    proj = Vs @ basis.T if basis.shape[0] else np.zeros((len(ts), 0))
    consts = proj.mean(axis=0)
    resid = np.abs(proj - consts).max(axis=0) if basis.shape[0] else np.zeros(0)
    return SlantHelixSpace(level, basis, consts, resid, np.abs(consts) <= tol, tol, sv)
