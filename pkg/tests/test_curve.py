import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate
from scipy.stats import special_ortho_group

from rhelix import gallery
from rhelix.curve import (
    Curve,
    arc_length,
    frenet,
    frenet_ode_residual,
    is_line,
    is_spherical,
    slant_helix_space,
    tangent_indicatrix,
    unit_speed,
)
from rhelix.errors import DegenerateFrame, NonRegular
from rhelix.sampling import SamplePlan

from oracles import fd_frenet


def test_helix_curvatures_at_random_parameters():
    c = gallery.helix()
    rng = np.random.default_rng(11)
    for t in rng.uniform(-20, 20, 100):
        k = frenet(c, t).curvatures
        assert abs(k[0] - 0.5) < 1e-9 and abs(k[1] - 0.5) < 1e-9


@pytest.mark.parametrize("a, b", [(2.0, 1.0), (0.5, 3.0), (1.0, -1.0)])
def test_helix_closed_form(a, b):
    c = gallery.helix(a, b)
    k = frenet(c, 0.37).curvatures
    assert k[0] == pytest.approx(a / (a * a + b * b), abs=1e-12)
    assert k[1] == pytest.approx(b / (a * a + b * b), abs=1e-12)


@pytest.mark.parametrize("curve", [gallery.helix(), gallery.w_curve_e4(), gallery.w_curve_e4(1.3, 0.7, 0.4, 2.2)])
def test_frenet_ode_consistency(curve):
    for t in np.linspace(0.2, 6.0, 15):
        assert frenet_ode_residual(curve, t, 1e-4) <= 1e-5


@pytest.mark.parametrize("curve", [gallery.helix(1.5, 0.4), gallery.w_curve_e4(), gallery.w_curve_e4(1.3, 0.7, 0.4, 2.2)])
@pytest.mark.parametrize("t", [0.3, 1.7, 4.1])
def test_frame_matches_finite_difference_oracle(curve, t):
    f = frenet(curve, t)
    frame, k = fd_frenet(curve, t)
    np.testing.assert_allclose(f.curvatures, k, atol=1e-7)
    np.testing.assert_allclose(f.frame, frame, atol=1e-7)


def test_w_curve_closed_form_first_curvature():
    a, p, b, q = 1.3, 0.7, 0.4, 2.2
    c = gallery.w_curve_e4(a, p, b, q)
    v2 = a * a * p * p + b * b * q * q
    k1 = math.sqrt(a * a * p**4 + b * b * q**4) / v2
    for t in (0.1, 2.0, 5.5):
        f = frenet(c, t)
        assert f.valid_depth == 4
        assert f.curvatures[0] == pytest.approx(k1, rel=1e-12)
    ks = np.array([frenet(c, t).curvatures for t in np.linspace(0, 6, 9)])
    assert np.ptp(ks, axis=0).max() < 1e-10


def test_frame_is_positively_oriented_orthonormal():
    for c in (gallery.helix(), gallery.w_curve_e4()):
        F = frenet(c, 0.9).frame
        np.testing.assert_allclose(F @ F.T, np.eye(c.dim), atol=1e-13)
        assert np.linalg.det(F) == pytest.approx(1.0, abs=1e-12)


def test_circle_frame_depth():
    f = frenet(gallery.circle(2.0), 0.4)
    assert f.valid_depth == 2
    assert f.curvatures[0] == pytest.approx(0.5)
    assert f.curvatures[1] == 0.0
    with pytest.raises(DegenerateFrame):
        f.V(3)


def test_line_depth_and_is_line():
    c = gallery.line()
    f = frenet(c, 0.5)
    assert f.valid_depth == 1
    assert is_line(c).ok
    verdict = is_line(gallery.helix())
    assert not verdict.ok and verdict.residual == pytest.approx(0.5)


def test_non_regular_point():
    c = Curve.from_expressions(["t^2", "t^3", "0"], (-1, 1))
    with pytest.raises(NonRegular):
        frenet(c, 0.0)


def test_frenet_ignores_parametrization():
    c = Curve.from_expressions(["cos(t^3 + t)", "sin(t^3 + t)", "t^3 + t"], (0, 2))
    ref = frenet(gallery.helix(), 0.8**3 + 0.8)
    f = frenet(c, 0.8)
    np.testing.assert_allclose(f.curvatures, ref.curvatures, atol=1e-12)
    np.testing.assert_allclose(f.frame, ref.frame, atol=1e-12)


@given(st.integers(0, 10_000))
def test_curvatures_invariant_under_rigid_motion(seed):
    rng = np.random.default_rng(seed)
    A = special_ortho_group.rvs(4, random_state=rng)
    b = rng.normal(size=4)
    c = gallery.w_curve_e4()
    moved = c.transformed(A, b)
    t = float(rng.uniform(0, 6))
    f, g = frenet(c, t), frenet(moved, t)
    np.testing.assert_allclose(g.curvatures, f.curvatures, atol=1e-10)
    np.testing.assert_allclose(g.frame, f.frame @ A.T, atol=1e-10)


def test_arc_length_matches_scipy_quad():
    c = Curve.from_expressions(["t", "t^2", "sin(t)"], (0, 2))

    def speed(t):
        return math.sqrt(1 + 4 * t * t + math.cos(t) ** 2)

    want, _ = integrate.quad(speed, 0.0, 2.0, epsabs=1e-13)
    assert arc_length(c, 0.0, 2.0) == pytest.approx(want, abs=1e-10)
    assert arc_length(c, 2.0, 0.0) == pytest.approx(-want, abs=1e-10)


def test_unit_speed_reparametrization():
    c = Curve.from_expressions(["t", "t^2", "0"], (0, 1.5))
    u = unit_speed(c)
    assert u.domain[1] == pytest.approx(arc_length(c, 0, 1.5))
    for s in np.linspace(0.05, u.domain[1] - 0.05, 7):
        D = u.derivatives(s, 3)
        assert np.linalg.norm(D[1]) == pytest.approx(1.0, abs=1e-10)
        assert D[1] @ D[2] == pytest.approx(0.0, abs=1e-9)
        # parabola curvature 2 / (1 + 4x^2)^(3/2) at the matching point
        x = D[0][0]
        assert np.linalg.norm(D[2]) == pytest.approx(2 / (1 + 4 * x * x) ** 1.5, rel=1e-8)


def test_tangent_indicatrix_is_spherical():
    beta = tangent_indicatrix(gallery.w_curve_e4())
    v = is_spherical(beta)
    assert v.ok and v.residual < 1e-12
    assert not is_spherical(gallery.helix(2.0, 1.0)).ok


def test_general_helix_axis():
    H = slant_helix_space(gallery.helix(), 1)
    assert H.dim == 1
    assert abs(H.basis[0] @ [0, 0, 1]) == pytest.approx(1.0, abs=1e-10)
    assert abs(H.constants[0]) == pytest.approx(1 / math.sqrt(2), abs=1e-10)


def test_principal_normal_axis_of_helix_is_orthogonal():
    H = slant_helix_space(gallery.helix(), 2)
    assert H.dim == 1
    assert H.orthogonal[0]


def test_slant_space_of_moved_helix():
    A = special_ortho_group.rvs(3, random_state=5)
    H = slant_helix_space(gallery.helix().transformed(A), 3, SamplePlan(40, 8, 1))
    assert H.dim == 1
    assert abs(H.basis[0] @ A[:, 2]) == pytest.approx(1.0, abs=1e-9)


def test_from_expressions_dimension_and_call():
    c = Curve.from_expressions(["t", "2*t", "3*t", "4*t"], (0, 1))
    assert c.dim == 4
    np.testing.assert_allclose(c(0.5), [0.5, 1, 1.5, 2])
    with pytest.raises(ValueError):
        Curve.from_expressions(["t"], (0, 1))
