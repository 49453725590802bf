import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import subspace_angles
from scipy.stats import special_ortho_group

from rhelix import gallery
from rhelix.errors import VerificationFailed
from rhelix.helix_space import (
    classify_strong_r_helix,
    helix_angle,
    helix_directions,
    surface_plan,
    verify_helix_space,
)
from rhelix.hypersurface import Hypersurface
from rhelix.linalg import max_principal_angle
from rhelix.sampling import SamplePlan


def test_hyperplane_every_direction():
    H = helix_directions(gallery.hyperplane())
    assert H.r == 3
    np.testing.assert_allclose(H.basis, np.eye(3))


@pytest.mark.parametrize("n", [3, 4])
def test_sphere_has_no_helix_direction(n):
    is_helix, r, _ = classify_strong_r_helix(gallery.sphere(n))
    assert r == 0 and not is_helix


def test_cylinder_axis():
    H = helix_directions(gallery.cylinder())
    assert H.r == 1
    assert np.abs(np.abs(H.basis[0]) - [0, 0, 1]).max() <= 1e-8
    assert abs(H.constants[0]) <= 1e-8
    assert H.angles[0] == pytest.approx(math.pi / 2, abs=1e-8)


@pytest.mark.parametrize("gamma", [math.pi / 6, 0.3, 1.1])
def test_cone_axis_and_constant(gamma):
    H = helix_directions(gallery.cone(gamma))
    assert H.r == 1
    d = H.basis[0]
    assert np.abs(np.abs(d) - [0, 0, 1]).max() <= 1e-8
    # outward cone normal is (-cos g cos v, -cos g sin v, sin g)
    assert H.constants[0] * np.sign(d[2]) == pytest.approx(math.sin(gamma), abs=1e-8)


def test_generalized_cylinder_e4():
    H = helix_directions(gallery.generalized_cylinder_e4())
    assert H.r == 2
    assert max_principal_angle(H.basis, np.eye(4)[2:]) <= 1e-6
    assert np.abs(H.constants).max() <= 1e-8


def test_helicoid_is_not_a_helix():
    assert helix_directions(gallery.helicoid()).r == 0


def test_plane_curve_cylinder_any_profile():
    S = gallery.plane_curve_cylinder("u1", "u1^3 + sin(u1)")
    H = helix_directions(S)
    assert H.r == 1
    assert abs(H.basis[0][2]) == pytest.approx(1.0, abs=1e-8)


def test_cone_in_e4_over_sphere():
    # cone over a 2-sphere in E^4: the axis is the only helix direction
    S = Hypersurface(
        ["u1*cos(u2)*cos(u3)", "u1*sin(u2)*cos(u3)", "u1*sin(u3)", "2*u1"],
        [(0.5, 2.0), (-3, 3), (-1.2, 1.2)],
    )
    H = helix_directions(S)
    assert H.r == 1
    assert abs(H.basis[0][3]) == pytest.approx(1.0, abs=1e-8)
    assert abs(H.constants[0]) == pytest.approx(1 / math.sqrt(5), abs=1e-8)


def test_reverification_catches_a_wrong_space():
    C = gallery.cone()
    H = helix_directions(C)
    with pytest.raises(VerificationFailed):
        verify_helix_space(C.flipped(), H)
    H_bad = helix_directions(gallery.cone(0.4))
    with pytest.raises(VerificationFailed):
        verify_helix_space(C, H_bad)


def test_undersampling_rejected():
    with pytest.raises(ValueError):
        helix_directions(gallery.cylinder(), SamplePlan(2, 1, 0))


def test_helix_angle():
    a = helix_angle(gallery.cone(), [0, 0, 1])
    assert a.is_constant and a.theta == pytest.approx(math.pi / 3, abs=1e-12)
    b = helix_angle(gallery.cone(), [1, 0, 0])
    assert not b.is_constant
    with pytest.raises(ValueError):
        helix_angle(gallery.cone(), [0, 0, 2])


def test_default_plan_size():
    assert surface_plan(gallery.cone()).size == 64
    assert surface_plan(gallery.cone(), oversample=20).size == 96


@given(st.integers(0, 2**31 - 1), st.floats(0.3, 3.0))
def test_rigid_motion_equivariance(seed, scale):
    rng = np.random.default_rng(seed)
    R = special_ortho_group.rvs(3, random_state=rng)
    C = gallery.cone()
    H0 = helix_directions(C)
    H1 = helix_directions(C.transformed(scale * R, rng.normal(size=3)))
    assert H1.r == 1
    assert np.max(subspace_angles((R @ H0.basis.T), H1.basis.T)) <= 1e-6
    # orientation-preserving motions keep the signed constants
    c0 = H0.constants[0] * (H0.basis[0] @ (R.T @ H1.basis[0]))
    assert H1.constants[0] == pytest.approx(c0, abs=1e-8)


@given(st.integers(0, 2**31 - 1))
def test_e4_equivariance(seed):
    rng = np.random.default_rng(seed)
    R = special_ortho_group.rvs(4, random_state=rng)
    H = helix_directions(gallery.generalized_cylinder_e4().transformed(R, rng.normal(size=4)))
    assert H.r == 2
    assert max_principal_angle(H.basis, (R @ np.eye(4)[:, 2:]).T) <= 1e-6
