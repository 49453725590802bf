import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from rhelix import gallery
from rhelix.curve import frenet
from rhelix.errors import PreconditionError, StepTooLarge
from rhelix.geodesic import (
    _shift,
    geodesic_series,
    integrate_geodesic,
    reverse_trace,
    trace_to_surface_curve,
)
from rhelix.hypersurface import Hypersurface, is_geodesic

TORUS = Hypersurface(["(2 + cos(u1))*cos(u2)", "(2 + cos(u1))*sin(u2)", "sin(u1)"], [(-7, 7), (-7, 7)])


def tilted_great_circle(a=0.6):
    v0 = np.array([0.0, math.cos(a), math.sin(a)])
    return v0, lambda s: math.cos(s) * np.array([1.0, 0, 0]) + math.sin(s) * v0


def test_plane_geodesics_are_straight():
    S = gallery.hyperplane(4, 3.0)
    v = np.array([0.6, 0.0, 0.8, 0.0])
    g = integrate_geodesic(S, [0.1, 0.2, -0.3], v, 2.0, step=0.05)
    want = g.positions[0] + g.s[:, None] * v
    np.testing.assert_allclose(g.positions, want, atol=1e-13)
    assert g.length == pytest.approx(2.0, abs=1e-15)


def test_sphere_great_circle_closes():
    v0, _ = tilted_great_circle()
    g = integrate_geodesic(gallery.sphere(), [0.0, 0.0], v0, 2 * math.pi, step=1e-3)
    assert np.linalg.norm(g.positions[-1] - g.positions[0]) <= 1e-6
    assert g.max_speed_drift <= 1e-10
    assert np.abs(np.linalg.norm(g.positions, axis=1) - 1).max() <= 1e-10


def test_convergence_order():
    v0, exact = tilted_great_circle()
    S = gallery.sphere()
    errs = []
    for h in (0.04, 0.02, 0.01):
        g = integrate_geodesic(S, [0.0, 0.0], v0, 2.0, step=h)
        errs.append(np.linalg.norm(g.positions[-1] - exact(2.0)))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 3.7


def test_cylinder_45_degree_geodesic_is_a_helix():
    r = 1 / math.sqrt(2)
    g = integrate_geodesic(gallery.cylinder(), [0.0, 0.0], [0.0, r, r], 2 * math.pi * math.sqrt(2), step=1e-3)
    c = trace_to_surface_curve(g).curve()
    for s in np.linspace(0.1, g.length - 0.1, 12):
        k = frenet(c, s).curvatures
        assert abs(k[0] - 0.5) <= 1e-6 and abs(k[1] - 0.5) <= 1e-6
    assert is_geodesic(g.surface, trace_to_surface_curve(g)).residual < 1e-9


def test_matches_scipy_ambient_projection_oracle():
    """Independent integration: u'' from projecting M_uu(w, w) onto the tangent plane."""

    def rhs(_, y):
        u, w = y[:2], y[2:]
        _, J, H = TORUS.derivatives(u, cache=False)
        acc = np.einsum("aij,i,j->a", H, w, w)
        return np.r_[w, -np.linalg.lstsq(J, acc - (acc @ TORUS.unit_normal(u)) * TORUS.unit_normal(u), rcond=None)[0]]

    u0 = np.array([0.4, -0.2])
    J0 = TORUS.jacobian(u0)
    w0 = np.array([0.3, 0.25])
    w0 = w0 / np.linalg.norm(J0 @ w0)
    sol = solve_ivp(rhs, (0, 3.0), np.r_[u0, w0], method="DOP853", rtol=1e-12, atol=1e-13)
    g = integrate_geodesic(TORUS, u0, w0, 3.0, step=2e-3, parametric=True)
    np.testing.assert_allclose(g.u[-1], sol.y[:2, -1], atol=1e-9)


def test_reverse_returns_to_start():
    g = integrate_geodesic(TORUS, [0.4, -0.2], [1.0, 0.7], 2.5, step=1e-2, parametric=True)
    back = reverse_trace(g)
    np.testing.assert_allclose(back.u[-1], g.u[0], atol=1e-10)


def test_domain_exit_is_reported():
    g = integrate_geodesic(gallery.cone(), [1.5, 0.0], [0.0, 1.0, 0.0], 10.0, step=1e-3)
    assert g.domain_exit
    assert g.length < 10.0
    assert 0 < g.max_margin_violation < 0.01
    assert all(g.surface.contains(u) for u in g.u)


def test_step_too_large():
    with pytest.raises(StepTooLarge):
        integrate_geodesic(TORUS, [0.4, -0.2], [1.0, 0.7], 3.0, step=0.4, parametric=True)


def test_last_step_hits_requested_length():
    g = integrate_geodesic(gallery.cylinder(), [0.0, 0.0], [0.0, 0.6, 0.8], 1.0015, step=1e-3)
    assert g.s[-1] == pytest.approx(1.0015, abs=1e-14)
    assert len(g) == 1003


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(u0=[0.0], v0=[0, 1, 0]),
        dict(u0=[99.0, 0.0], v0=[0, 1, 0]),
        dict(u0=[0.0, 0.0], v0=[0, 2, 0]),
        dict(u0=[0.0, 0.0], v0=[1, 0, 0]),
        dict(u0=[0.0, 0.0], v0=[0, 1, 0], length=-1.0),
        dict(u0=[0.0, 0.0], v0=[0, 1, 0], step=0.0),
    ],
)
def test_preconditions(kwargs):
    kwargs.setdefault("length", 1.0)
    kwargs.setdefault("step", 1e-3)
    with pytest.raises(PreconditionError):
        integrate_geodesic(gallery.cylinder(), kwargs["u0"], kwargs["v0"], kwargs["length"], kwargs["step"])


def test_geodesic_series_against_integration():
    u0, w0 = np.array([0.4, -0.2]), np.array([0.3, 0.25])
    w0 = w0 / np.linalg.norm(TORUS.jacobian(u0) @ w0)
    c = geodesic_series(TORUS, u0, w0, 12)
    g = integrate_geodesic(TORUS, u0, w0, 0.2, step=1e-3, parametric=True)
    s = g.s[-1]
    np.testing.assert_allclose(c.T @ s ** np.arange(13), g.u[-1], atol=1e-11)


def test_shift_reexpands_polynomial():
    c = np.array([[1.0], [2.0], [3.0]])  # 1 + 2x + 3x^2 about 0
    out = _shift(c, 0.5, 2)  # about 0.5: 2.75 + 5 tau + 3 tau^2
    np.testing.assert_allclose(out[:, 0], [2.75, 5.0, 3.0])


def test_interpolant_matches_nodes_and_is_smooth():
    g = integrate_geodesic(TORUS, [0.4, -0.2], [1.0, 0.7], 1.0, step=1e-2, parametric=True)
    sc = trace_to_surface_curve(g)
    for i in (0, 37, 100):
        np.testing.assert_allclose(sc.u(g.s[i]), g.u[i], atol=1e-15)
    mid = 0.5 * (g.s[40] + g.s[41])
    left = _shift(geodesic_series(TORUS, g.u[40], g.w[40], 9), mid - g.s[40], 0)[0]
    right = _shift(geodesic_series(TORUS, g.u[41], g.w[41], 9), mid - g.s[41], 0)[0]
    assert np.linalg.norm(left - right) < 1e-11


def test_diagnostics_keys():
    g = integrate_geodesic(gallery.cylinder(), [0.0, 0.0], [0.0, 1.0, 0.0], 0.5, step=0.01)
    d = g.diagnostics()
    assert set(d) == {
        "samples", "step", "length", "requested_length", "max_speed_drift",
        "max_tangential_residual", "max_margin_violation", "domain_exit",
    }
    assert d["samples"] == 51 and not d["domain_exit"]
