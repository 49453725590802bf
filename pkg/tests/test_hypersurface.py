import math

import numpy as np
import pytest
import sympy as sp
from scipy.stats import special_ortho_group

from rhelix import gallery
from rhelix.errors import RankDeficient
from rhelix.geodesic import _Field
from rhelix.hypersurface import (
    Hypersurface,
    SurfaceCurve,
    gauss_map_curve,
    is_asymptotic,
    is_geodesic,
    is_line_of_curvature,
)

SURFACES = {
    "torus": (["(2 + cos(u1))*cos(u2)", "(2 + cos(u1))*sin(u2)", "sin(u1)"], [(-3, 3), (-3, 3)]),
    "graph": (["u1", "u2", "u1^2 - u1*u2 + sin(u2)"], [(-1, 1), (-1, 1)]),
    "e4": (["u1", "u2", "u3", "exp(u1)*cos(u2) + u3^2"], [(-1, 1)] * 3),
}


def symbolic(components):
    m = len(components) - 1
    us = sp.symbols(" ".join(f"u{i + 1}" for i in range(m)))
    us = us if isinstance(us, tuple) else (us,)
    names = {str(u): u for u in us}
    X = sp.Matrix([sp.sympify(c.replace("^", "**"), locals=names) for c in components])
    J = X.jacobian(us)
    g = J.T * J
    ginv = g.inv()
    gamma = [[[sum(ginv[k, l] * (sp.diff(g[j, l], us[i]) + sp.diff(g[i, l], us[j]) - sp.diff(g[i, j], us[l]))
                   for l in range(m)) / 2 for j in range(m)] for i in range(m)] for k in range(m)]
    return us, X, J, g, gamma


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_metric_and_christoffel_match_sympy(name):
    comps, dom = SURFACES[name]
    S = Hypersurface(comps, dom)
    us, X, J, g, gamma = symbolic(comps)
    point = [0.3, -0.45, 0.2][: S.n_params]
    subs = dict(zip(us, point))
    np.testing.assert_allclose(S.metric(point), np.array(g.subs(subs), dtype=float), rtol=1e-12, atol=1e-13)
    want = np.array([[[float(gamma[k][i][j].subs(subs)) for j in range(len(us))] for i in range(len(us))]
                     for k in range(len(us))])
    np.testing.assert_allclose(S.christoffel(point), want, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_integrator_spray_matches_christoffel(name):
    comps, dom = SURFACES[name]
    A = special_ortho_group.rvs(len(comps), random_state=3) * 1.7
    for S in (Hypersurface(comps, dom), Hypersurface(comps, dom).transformed(A, np.ones(len(comps)))):
        F = _Field(S)
        u = np.array([0.2, 0.1, -0.3][: S.n_params])
        w = np.array([0.5, -0.8, 0.3][: S.n_params])
        want = -np.einsum("kij,i,j->k", S.christoffel(u), w, w)
        np.testing.assert_allclose(F.accel(F.geometry(u), list(w)), want, rtol=1e-10, atol=1e-12)


def test_normal_is_unit_orthogonal_and_oriented():
    for comps, dom in SURFACES.values():
        S = Hypersurface(comps, dom)
        u = np.array([0.1, 0.2, 0.3][: S.n_params])
        N, J = S.unit_normal(u), S.jacobian(u)
        assert np.linalg.norm(N) == pytest.approx(1.0)
        np.testing.assert_allclose(J.T @ N, 0, atol=1e-13)
        assert np.linalg.det(np.column_stack([J, N])) > 0
        flipped = S.flipped()
        np.testing.assert_allclose(flipped.unit_normal(u), -N)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sphere_normal_is_outward(n):
    S = gallery.sphere(n, 2.0)
    rng = np.random.default_rng(n)
    for _ in range(5):
        u = rng.uniform(-1.0, 1.0, n - 1)
        np.testing.assert_allclose(S.unit_normal(u), S.point(u) / 2.0, atol=1e-13)


def test_principal_curvatures():
    np.testing.assert_allclose(gallery.sphere(3, 2.0).principal_curvatures([0.3, 0.2]), [-0.5, -0.5], atol=1e-12)
    np.testing.assert_allclose(np.sort(np.abs(gallery.cylinder(2.0).principal_curvatures([0.3, 0.2]))), [0.0, 0.5], atol=1e-12)


def test_rank_deficient_jacobian():
    S = Hypersurface(["u1*cos(u2)", "u1*sin(u2)", "u1"], [(-1, 1), (-3, 3)])
    with pytest.raises(RankDeficient):
        S.unit_normal([0.0, 0.5])


def test_singular_margin_shrinks_domain():
    C = gallery.cone()
    assert C.domain[0][0] > 0.0
    assert C.raw_domain[0][0] == 0.0


def test_normal_series_matches_finite_differences():
    comps, dom = SURFACES["torus"]
    S = Hypersurface(comps, dom)
    gamma = SurfaceCurve.from_expressions(S, ["0.3 + t", "sin(t)"], (-1, 1))
    _, N = gamma.series(0.2, 3)
    h = 1e-4
    Nf = [S.unit_normal(gamma.u(0.2 + k * h)) for k in (-1, 0, 1)]
    np.testing.assert_allclose(N[0], Nf[1], atol=1e-14)
    np.testing.assert_allclose(N[1], (Nf[2] - Nf[0]) / (2 * h), atol=1e-7)
    np.testing.assert_allclose(2 * N[2], (Nf[2] - 2 * Nf[1] + Nf[0]) / h**2, atol=1e-5)
    np.testing.assert_allclose(gauss_map_curve(S, gamma)(0.2), N[0])


def test_sphere_great_circle_is_geodesic_not_asymptotic():
    S = gallery.sphere()
    eq = SurfaceCurve.from_expressions(S, ["t", "0"], (0, 6))
    lat = SurfaceCurve.from_expressions(S, ["t", "0.5"], (0, 6))
    assert is_geodesic(S, eq).ok
    v = is_geodesic(S, lat)
    assert not v.ok and v.residual == pytest.approx(math.tan(0.5), rel=1e-10)
    assert is_line_of_curvature(S, lat).ok
    assert not is_asymptotic(S, eq).ok


def test_cylinder_curves():
    S = gallery.cylinder()
    ruling = SurfaceCurve.from_expressions(S, ["0.4", "t"], (-1, 1))
    circle = SurfaceCurve.from_expressions(S, ["t", "0"], (-3, 3))
    helix = SurfaceCurve.from_expressions(S, ["t", "t"], (-3, 3))
    for c in (ruling, circle, helix):
        assert is_geodesic(S, c).ok
    assert is_asymptotic(S, ruling).ok and is_line_of_curvature(S, ruling).ok
    assert is_line_of_curvature(S, circle).ok and not is_asymptotic(S, circle).ok
    v = is_line_of_curvature(S, helix)
    assert not v.ok and v.residual == pytest.approx(0.5, abs=1e-10)


def test_helicoid_rulings_are_asymptotic():
    S = gallery.helicoid()
    ruling = SurfaceCurve.from_expressions(S, ["t", "0.7"], (-0.9, 0.9))
    helix = SurfaceCurve.from_expressions(S, ["0.5", "t"], (-3, 3))
    assert is_asymptotic(S, ruling).ok
    assert is_asymptotic(S, helix).ok
    assert not is_line_of_curvature(S, ruling).ok


def test_checks_follow_the_given_surface():
    S = gallery.cylinder()
    moved = S.transformed(special_ortho_group.rvs(3, random_state=2), [1.0, 2.0, 3.0])
    c = SurfaceCurve.from_expressions(S, ["t", "0.3*t"], (-2, 2))
    assert is_geodesic(moved, c).residual == pytest.approx(is_geodesic(S, c).residual, abs=1e-12)
