"""Unit-speed geodesics integrated in parameter space.

The state is ``(u, w)`` with ``w = du/ds``; the geodesic equation is
``u'' = -Gamma(w, w)``.  Classical RK4 advances the state; afterwards ``w``
is rescaled to unit ambient speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GeometryError, PreconditionError, RankDeficient, StepTooLarge
from .hypersurface import Hypersurface, SurfaceCurve

DEFAULT_STEP = 1e-3
MAX_DRIFT = 1e-6


@dataclass(frozen=True)
class GeodesicTrace:
    surface: Hypersurface
    s: np.ndarray
    u: np.ndarray  # (m, n-1)
    w: np.ndarray  # parameter velocities du/ds
    positions: np.ndarray
    velocities: np.ndarray  # ambient unit tangents
    step: float
    max_speed_drift: float
    max_tangential_residual: float
    max_margin_violation: float
    domain_exit: bool = False
    requested_length: float = 0.0
    _patches: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def length(self) -> float:
        return float(self.s[-1])

    def __len__(self):
        return len(self.s)

    def diagnostics(self) -> dict:
        return {
            "samples": len(self.s),
            "step": self.step,
            "length": self.length,
            "requested_length": self.requested_length,
            "max_speed_drift": self.max_speed_drift,
            "max_tangential_residual": self.max_tangential_residual,
            "max_margin_violation": self.max_margin_violation,
            "domain_exit": self.domain_exit,
        }


class _Field:
    """Geodesic spray of ``S`` on plain floats (the RK4 loop is call-bound).

    Uses first-kind symbols ``Gamma_{l,ij} = <M_l, M_ij>_Q`` with
    ``Q = A^T A`` for a patch moved by ``x -> A x + b``; this equals the
    metric-derivative formula and is cross-checked against
    :meth:`Hypersurface.christoffel`.
    """

    def __init__(self, S: Hypersurface):
        self.S = S
        self.n, self.m = S.dim, S.n_params
        Q = S.linear.T @ S.linear
        self.Q = None if np.allclose(Q, np.eye(self.n), rtol=0, atol=1e-15) else Q.tolist()
        idx = S._hess._index
        # symmetric pairs i <= j, off-diagonal ones counted twice
        self.terms = [(int(idx[i, j]), i, j, 1.0 if i == j else 2.0) for i in range(self.m) for j in range(i, self.m)]

    def geometry(self, u):
        """``(G, QG, g, H)`` at ``u``: raw Jacobian rows, Q-weighted rows, metric, Hessian pairs."""
        try:
            _, G, H = self.S._hess._f([float(x) for x in u])
        except (ValueError, ZeroDivisionError, OverflowError):
            self.S._hess(u)  # raises a DomainError naming the subexpression
            raise
        n, m = self.n, self.m
        if self.Q is None:
            QG = G
        else:
            QG = [[sum(self.Q[a][b] * G[b][j] for b in range(n)) for j in range(m)] for a in range(n)]
        g = [[sum(G[a][i] * QG[a][j] for a in range(n)) for j in range(m)] for i in range(m)]
        return G, QG, g, H

    def hww(self, H, w):
        ww = [0.0] * len(H[0]) if H else []
        for p, i, j, f in self.terms:
            ww[p] = f * w[i] * w[j]
        return [sum(h * x for h, x in zip(Ha, ww)) for Ha in H]

    def accel(self, geo, w):
        _, QG, g, H = geo
        hw = self.hww(H, w)
        rhs = [-sum(row[l] * x for row, x in zip(QG, hw)) for l in range(self.m)]
        return _solve(g, rhs)

    def speed(self, geo, w):
        g = geo[2]
        m = self.m
        return math.sqrt(sum(w[i] * g[i][j] * w[j] for i in range(m) for j in range(m)))

    def tangential_residual(self, geo, w):
        """Ambient norm of the tangential part of ``M_u a + M_uu(w, w)``."""
        G, QG, g, H = geo
        a = self.accel(geo, w)
        hw = self.hww(H, w)
        amb = [sum(G[b][j] * a[j] for j in range(self.m)) + hw[b] for b in range(self.n)]
        proj = [sum(QG[b][l] * amb[b] for b in range(self.n)) for l in range(self.m)]
        c = _solve(g, proj)
        return math.sqrt(max(0.0, sum(c[i] * proj[i] for i in range(self.m))))


def _solve(A, b):
    """Solve a tiny dense system (closed form for 2x2, pivoted elimination otherwise)."""
    m = len(b)
    if m == 2:
        (a, c), (d, e) = A
        det = a * e - c * d
        if det == 0.0:
            raise RankDeficient("singular metric")
        return [(e * b[0] - c * b[1]) / det, (a * b[1] - d * b[0]) / det]
    M = [list(A[i]) + [b[i]] for i in range(m)]
    for k in range(m):
        p = max(range(k, m), key=lambda r: abs(M[r][k]))
        if M[p][k] == 0.0:
            raise RankDeficient("singular metric")
        M[k], M[p] = M[p], M[k]
        for r in range(k + 1, m):
            f = M[r][k] / M[k][k]
            for c in range(k, m + 1):
                M[r][c] -= f * M[k][c]
    x = [0.0] * m
    for k in range(m - 1, -1, -1):
        x[k] = (M[k][m] - sum(M[k][c] * x[c] for c in range(k + 1, m))) / M[k][k]
    return x


def _outside(S, u) -> float:
    return max(max(lo - x, x - hi, 0.0) for x, (lo, hi) in zip(u, S.domain))


def _axpy(a, x, y):
    return [a * xi + yi for xi, yi in zip(x, y)]


def integrate_geodesic(
    S: Hypersurface,
    u0,
    v0,
    length: float,
    step: float = DEFAULT_STEP,
    parametric: bool = False,
    max_drift: float = MAX_DRIFT,
) -> GeodesicTrace:
    """Integrate the unit-speed geodesic with ``u(0) = u0``.

    ``v0`` is the ambient unit tangent (or, with ``parametric=True``, a
    parameter-space velocity that is rescaled to unit speed).  Integration
    stops early, flagging ``domain_exit``, if the next step would leave the
    margin-shrunk parameter box.
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (S.n_params,):
        raise PreconditionError(f"u0 must have {S.n_params} entries")
    if not S.contains(u0):
        raise PreconditionError(f"u0={u0.tolist()} is outside the parameter domain")
    if not (length > 0 and math.isfinite(length)):
        raise PreconditionError("length must be positive")
    if not (step > 0 and math.isfinite(step)):
        raise PreconditionError("step must be positive")
    J0 = S.jacobian(u0)
    v0 = np.asarray(v0, dtype=float)
    if parametric:
        if v0.shape != (S.n_params,):
            raise PreconditionError(f"parameter velocity must have {S.n_params} entries")
        sp = float(np.linalg.norm(J0 @ v0))
        if sp == 0.0:
            raise PreconditionError("zero initial velocity")
        w = v0 / sp
    else:
        if v0.shape != (S.dim,):
            raise PreconditionError(f"tangent vector must have {S.dim} entries")
        if abs(np.linalg.norm(v0) - 1.0) > 1e-8:
            raise PreconditionError("initial tangent must have unit length")
        w = np.linalg.lstsq(J0, v0, rcond=None)[0]
        if np.linalg.norm(J0 @ w - v0) > 1e-8:
            raise PreconditionError("initial vector is not tangent to the surface")
        w = w / np.linalg.norm(J0 @ w)

    F = _Field(S)
    n_steps = max(1, math.ceil(length / step - 1e-9))
    u, w = u0.tolist(), w.tolist()
    geo = F.geometry(u)
    s = 0.0
    ss, us, ws = [0.0], [u], [w]
    drift = 0.0
    overshoot = 0.0
    exited = False
    resid = F.tangential_residual(geo, w)
    for i in range(n_steps):
        h = step if i < n_steps - 1 else length - s
        try:
            k1w = F.accel(geo, w)
            w2 = _axpy(0.5 * h, k1w, w)
            k2w = F.accel(F.geometry(_axpy(0.5 * h, w, u)), w2)
            w3 = _axpy(0.5 * h, k2w, w)
            k3w = F.accel(F.geometry(_axpy(0.5 * h, w2, u)), w3)
            w4 = _axpy(h, k3w, w)
            k4w = F.accel(F.geometry(_axpy(h, w3, u)), w4)
        except GeometryError:
            # stage points may stray outside the chart near its boundary
            probe = _outside(S, _axpy(h, w, u))
            if probe > 0.0:
                exited, overshoot = True, probe
                break
            raise
        h6 = h / 6.0
        u_new = [ui + h6 * (a + 2 * b + 2 * c + d) for ui, a, b, c, d in zip(u, w, w2, w3, w4)]
        w_new = [wi + h6 * (a + 2 * b + 2 * c + d) for wi, a, b, c, d in zip(w, k1w, k2w, k3w, k4w)]
        out = _outside(S, u_new)
        if out > 0.0:
            exited, overshoot = True, out
            break
        geo = F.geometry(u_new)
        sp = F.speed(geo, w_new)
        d = abs(sp - 1.0)
        if d > max_drift:
            raise StepTooLarge(f"speed drift {d:.3g} exceeds {max_drift:.3g} at s={s + h:.6g}; reduce the step")
        drift = max(drift, d)
        u, w = u_new, [x / sp for x in w_new]
        resid = max(resid, F.tangential_residual(geo, w))
        s += h
        ss.append(s)
        us.append(u)
        ws.append(w)

    u_arr, w_arr = np.array(us), np.array(ws)
    raw = [S._hess._f(list(ui))[:2] for ui in us]
    vals = np.array([r[0] for r in raw])
    jacs = np.array([r[1] for r in raw])
    pos = vals @ S.linear.T + S.offset
    vel = np.einsum("ab,kbj,kj->ka", S.linear, jacs, w_arr)
    return GeodesicTrace(
        surface=S,
        s=np.array(ss),
        u=u_arr,
        w=w_arr,
        positions=pos,
        velocities=vel,
        step=float(step),
        max_speed_drift=drift,
        max_tangential_residual=resid,
        max_margin_violation=overshoot,
        domain_exit=exited,
        requested_length=float(length),
    )


def geodesic_series(S: Hypersurface, u0, w0, order: int):
    """Taylor coefficients ``(order+1, n-1)`` of the geodesic through ``(u0, w0)``.

    Order ``p+1`` is fixed by requiring the ``s^(p-1)`` coefficient of
    ``J(s)^T alpha''(s)`` to vanish; ``c_{p+1}`` enters it only through
    ``(p+1) p J_0^T J_0 c_{p+1}``.
    """
    m = S.n_params
    c = np.zeros((order + 1, m))
    c[0] = u0
    if order >= 1:
        c[1] = w0
    g0 = None
    for p in range(1, order):
        alpha, J = S.along(c[: p + 2])
        if g0 is None:
            g0 = J[0].T @ J[0]
        # coefficients of alpha'' up to s^(p-1)
        acc = np.array([(q + 2) * (q + 1) * alpha[q + 2] for q in range(p)])
        r = sum(J[a].T @ acc[p - 1 - a] for a in range(p))
        c[p + 1] = -np.linalg.solve(g0, r) / ((p + 1) * p)
    return c


def _shift(coeffs, delta, order):
    """Coefficients of ``sum c_j (delta + tau)^j`` in ``tau`` up to ``order``."""
    K = coeffs.shape[0] - 1
    out = np.zeros((order + 1, coeffs.shape[1]))
    powers = delta ** np.arange(K + 1)
    for mdeg in range(min(order, K) + 1):
        j = np.arange(mdeg, K + 1)
        binom = np.array([math.comb(int(x), mdeg) for x in j], dtype=float)
        out[mdeg] = (binom * powers[j - mdeg]) @ coeffs[mdeg:]
    return out


def trace_to_surface_curve(g: GeodesicTrace, extra_order: int = 4, name: str = "") -> SurfaceCurve:
    """Smooth surface curve through the trace, parametrized by arc length.

    Near each node the curve is the node's own geodesic Taylor polynomial
    (degree ``order + extra_order``), so derivatives of any requested order
    inherit the node accuracy instead of being amplified by differencing.
    """
    if len(g.s) == 0:
        raise PreconditionError("empty trace")
    S = g.surface
    s_nodes = g.s

    def u_taylor(t, order):
        i = int(np.clip(np.searchsorted(s_nodes, t), 0, len(s_nodes) - 1))
        if i > 0 and abs(s_nodes[i - 1] - t) <= abs(s_nodes[i] - t):
            i -= 1
        # fixed patch degree keeps results independent of query history
        K = max(order, S.dim + 1) + extra_order
        key = (i, K)
        coeffs = g._patches.get(key)
        if coeffs is None:
            coeffs = geodesic_series(S, g.u[i], g.w[i], K)
            g._patches[key] = coeffs
        return _shift(coeffs, t - s_nodes[i], order)

    return SurfaceCurve(S, u_taylor, (0.0, g.length), name=name or "geodesic")


def reverse_trace(g: GeodesicTrace, step: Optional[float] = None) -> GeodesicTrace:
    """Integrate back from the endpoint with negated velocity."""
    return integrate_geodesic(g.surface, g.u[-1], -g.w[-1], g.length, step or g.step, parametric=True)
