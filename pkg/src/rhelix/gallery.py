"""Built-in analytic surfaces and curves used as fixtures and scene shortcuts."""

from __future__ import annotations

import math

from .curve import Curve
from .hypersurface import Hypersurface

# wide periodic ranges so closed geodesics fit inside one chart
_PERIODIC = (-7.0, 7.0)


def hyperplane(n: int = 3, extent: float = 1.0) -> Hypersurface:
    comps = [f"u{i + 1}" for i in range(n - 1)] + ["0"]
    return Hypersurface(comps, [(-extent, extent)] * (n - 1), name=f"hyperplane({n})")


def sphere(n: int = 3, radius: float = 1.0) -> Hypersurface:
    """Hyperspherical chart with outward normal ``N(p) = p / radius``.

    ``x1 = cos u1 prod cos u_j``, ``x2 = sin u1 prod cos u_j``,
    ``x_k = sin u_{k-1} prod_{j >= k} cos u_j``; ``u1`` is the longitude.
    """
    m = n - 1
    r = _num(radius)

    def cosprod(start):
        return "".join(f"*cos(u{j})" for j in range(start, m + 1))

    comps = [f"{r}*cos(u1){cosprod(2)}", f"{r}*sin(u1){cosprod(2)}"]
    for k in range(3, n + 1):
        comps.append(f"{r}*sin(u{k - 1}){cosprod(k)}")
    domain = [_PERIODIC] + [(-1.4, 1.4)] * (m - 1)
    # at u = 0 the tangents are e2..en and N = e1: det[e2..en, e1] = (-1)^(n-1)
    orientation = 1 if (n - 1) % 2 == 0 else -1
    return Hypersurface(comps, domain, name=f"sphere({n})", orientation=orientation)


def cylinder(radius: float = 1.0) -> Hypersurface:
    r = _num(radius)
    return Hypersurface([f"{r}*cos(u1)", f"{r}*sin(u1)", "u2"], [_PERIODIC, (-10.0, 10.0)], name="cylinder")


def cone(half_angle: float = math.pi / 6, length: float = 3.0) -> Hypersurface:
    """Circular cone with apex at the origin, axis ``e3``; apex excluded by the singular margin."""
    s, c = _num(math.sin(half_angle)), _num(math.cos(half_angle))
    return Hypersurface(
        [f"u1*{s}*cos(u2)", f"u1*{s}*sin(u2)", f"u1*{c}"],
        [(0.0, float(length)), _PERIODIC],
        name="cone",
        singular=[(0, 0.0)],
    )


def generalized_cylinder_e4() -> Hypersurface:
    return Hypersurface(
        ["cos(u1)", "sin(u1)", "u2", "u3"], [_PERIODIC, (-2.0, 2.0), (-2.0, 2.0)], name="generalized-cylinder-E4"
    )


def helicoid(pitch: float = 1.0) -> Hypersurface:
    return Hypersurface(
        ["u1*cos(u2)", "u1*sin(u2)", f"{_num(pitch)}*u2"], [(-1.0, 1.0), (-math.pi, math.pi)], name="helicoid"
    )


def plane_curve_cylinder(x: str = "cos(u1)", y: str = "sin(u1)", domain=(-3.0, 3.0)) -> Hypersurface:
    """Cylinder ``(x(u1), y(u1), u2)`` over a plane curve; ``e3`` is always a helix direction."""
    return Hypersurface([x, y, "u2"], [tuple(domain), (-5.0, 5.0)], name="plane-curve-cylinder")


SURFACES = {
    "hyperplane": hyperplane,
    "sphere": sphere,
    "cylinder": cylinder,
    "cone": cone,
    "generalized-cylinder-E4": generalized_cylinder_e4,
    "helicoid": helicoid,
    "plane-curve-cylinder": plane_curve_cylinder,
}

SURFACE_PARAMS = {
    "hyperplane": {"n": 3},
    "sphere": {"n": 3, "radius": 1.0},
    "cylinder": {"radius": 1.0},
    "cone": {"half_angle": math.pi / 6},
    "generalized-cylinder-E4": {},
    "helicoid": {"pitch": 1.0},
    "plane-curve-cylinder": {"x": "cos(u1)", "y": "sin(u1)"},
}


def helix(a: float = 1.0, b: float = 1.0, turns: float = 1.0) -> Curve:
    """Circular helix ``(a cos t, a sin t, b t)``: ``k1 = a/(a^2+b^2)``, ``k2 = b/(a^2+b^2)``."""
    return Curve.from_expressions(
        [f"{_num(a)}*cos(t)", f"{_num(a)}*sin(t)", f"{_num(b)}*t"], (0.0, 2 * math.pi * turns), name="helix"
    )


def circle(radius: float = 1.0, n: int = 3) -> Curve:
    r = _num(radius)
    comps = [f"{r}*cos(t)", f"{r}*sin(t)"] + ["0"] * (n - 2)
    return Curve.from_expressions(comps, (0.0, 2 * math.pi), name="circle")


def line(direction=(1.0, 2.0, 3.0)) -> Curve:
    return Curve.from_expressions([f"{_num(d)}*t" for d in direction], (0.0, 1.0), name="line")


def w_curve_e4(a: float = 1.0, p: float = 1.0, b: float = 0.5, q: float = 2.0) -> Curve:
    """``(a cos pt, a sin pt, b cos qt, b sin qt)``: constant curvatures in E^4."""
    a_, p_, b_, q_ = map(_num, (a, p, b, q))
    return Curve.from_expressions(
        [f"{a_}*cos({p_}*t)", f"{a_}*sin({p_}*t)", f"{b_}*cos({q_}*t)", f"{b_}*sin({q_}*t)"],
        (0.0, 2 * math.pi),
        name="w-curve-E4",
    )


CURVES = {"helix": helix, "circle": circle, "line": line, "w-curve-E4": w_curve_e4}

CURVE_PARAMS = {
    "helix": {"a": 1.0, "b": 1.0, "turns": 1.0},
    "circle": {"radius": 1.0, "n": 3},
    "line": {"direction": [1.0, 2.0, 3.0]},
    "w-curve-E4": {"a": 1.0, "p": 1.0, "b": 0.5, "q": 2.0},
}


def _num(x) -> str:
    """Exact textual form of a float for embedding in expressions."""
    x = float(x)
    return f"({x!r})" if x < 0 else repr(x)
