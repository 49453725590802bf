"""JSON scene files: a surface, named curves and analysis settings.

Schema (version 1)::

    {
      "schema": 1,
      "dim": 3,
      "surface": {"gallery": "cone", "params": {"half_angle": 0.5235987755982988}}
             or {"components": [...], "variables": ["u1", "u2"],
                 "domain": [[lo, hi], ...], "singular": [{"param": "u1", "value": 0}],
                 "orientation": 1, "name": "..."},
      "curves": {
        "<name>": {"kind": "ambient", "components": [...], "domain": [a, b], "variable": "t"}
               or {"kind": "ambient", "gallery": "helix", "params": {...}}
               or {"kind": "surface", "components": [...u(t)...], "domain": [a, b]}
               or {"kind": "geodesic", "start": [...u0...], "direction": [...ambient unit v0...]
                   (or "velocity_u": [...]), "length": L, "step": h}
      },
      "analysis": {"samples": 64, "tol": 1e-6, "hypothesis_tol": 1e-8, "seed": 0}
    }

Errors carry a JSON pointer to the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from . import gallery
from .curve import Curve
from .errors import ExprSyntaxError, SceneError
from .expr import parse
from .hypersurface import Hypersurface, SurfaceCurve, default_variables
from .theorems import GeodesicSpec, SuiteConfig

SCHEMA_VERSION = 1


@dataclass
class Analysis:
    samples: int = 64
    tol: float = 1e-6
    hypothesis_tol: float = 1e-8
    seed: int = 0


@dataclass
class Scene:
    dim: int
    surface: Optional[Hypersurface] = None
    curves: Dict[str, Union[Curve, SurfaceCurve, GeodesicSpec]] = field(default_factory=dict)
    analysis: Analysis = field(default_factory=Analysis)
    source: str = ""

    def curve(self, name: str):
        if name not in self.curves:
            raise SceneError(f"no curve named {name!r}", "/curves")
        return self.curves[name]

    def geodesics(self) -> List[GeodesicSpec]:
        return [c for c in self.curves.values() if isinstance(c, GeodesicSpec)]

    def surface_curves(self) -> List[SurfaceCurve]:
        return [c for c in self.curves.values() if isinstance(c, SurfaceCurve)]

    def suite_config(self, **overrides) -> SuiteConfig:
        a = self.analysis
        cfg = SuiteConfig(tol=a.tol, hypothesis_tol=a.hypothesis_tol, seed=a.seed, samples=a.samples)
        cfg.geodesics = self.geodesics() or None
        cfg.curves = self.surface_curves() or None
        for k, v in overrides.items():
            if v is not None:
                setattr(cfg, k, v)
        return cfg


# validation helpers ----------------------------------------------------------


def _ptr(path, key):
    return f"{path}/{str(key).replace('~', '~0').replace('/', '~1')}"


def _get(obj, key, path, kind=None, required=True, default=None):
    if key not in obj:
        if required:
            raise SceneError(f"missing field {key!r}", path)
        return default
    val = obj[key]
    if kind is not None and not _is(val, kind):
        raise SceneError(f"expected {_kind_name(kind)}", _ptr(path, key))
    return val


def _is(val, kind):
    if kind is float:
        return isinstance(val, (int, float)) and not isinstance(val, bool) and math.isfinite(val)
    if kind is int:
        return isinstance(val, int) and not isinstance(val, bool)
    return isinstance(val, kind)


def _kind_name(kind):
    return {float: "a finite number", int: "an integer", str: "a string", list: "an array", dict: "an object"}.get(
        kind, kind.__name__
    )


def _numbers(val, path, length=None):
    if not isinstance(val, list) or not all(_is(x, float) for x in val):
        raise SceneError("expected an array of finite numbers", path)
    if length is not None and len(val) != length:
        raise SceneError(f"expected {length} numbers, got {len(val)}", path)
    return [float(x) for x in val]


def _interval(val, path):
    a, b = _numbers(val, path, 2)
    if not a < b:
        raise SceneError("interval must satisfy lo < hi", path)
    return a, b


def _expressions(val, path, length):
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise SceneError("expected an array of expression strings", path)
    if len(val) != length:
        raise SceneError(f"expected {length} components, got {len(val)}", path)
    return val


def _check_syntax(exc: ExprSyntaxError, path):
    exc.pointer = path
    raise exc


def _gallery_call(table, defaults, spec, path, extra=None):
    name = _get(spec, "gallery", path, str)
    if name not in table:
        raise SceneError(f"unknown gallery entry {name!r} (known: {', '.join(sorted(table))})", _ptr(path, "gallery"))
    params = _get(spec, "params", path, dict, required=False, default={})
    allowed = set(defaults[name])
    for key in params:
        if key not in allowed:
            raise SceneError(f"unknown parameter {key!r} for {name}", _ptr(_ptr(path, "params"), key))
    kwargs = dict(extra or {})
    kwargs.update(params)
    kwargs = {k: v for k, v in kwargs.items() if k in allowed}
    try:
        return name, table[name](**kwargs)
    except ExprSyntaxError as exc:
        _check_syntax(exc, _ptr(path, "params"))
    except (TypeError, ValueError) as exc:
        raise SceneError(str(exc), _ptr(path, "params")) from exc


# loaders ---------------------------------------------------------------------


def _surface(spec, dim, path) -> Hypersurface:
    if not isinstance(spec, dict):
        raise SceneError("expected an object", path)
    has_gallery, has_components = "gallery" in spec, "components" in spec
    if has_gallery == has_components:
        raise SceneError("give exactly one of 'gallery' or 'components'", path)
    if has_gallery:
        _, S = _gallery_call(gallery.SURFACES, gallery.SURFACE_PARAMS, spec, path, extra={"n": dim})
        if S.dim != dim:
            raise SceneError(f"gallery surface lives in E^{S.dim}, scene dim is {dim}", _ptr(path, "params"))
        return S
    comps = _expressions(spec["components"], _ptr(path, "components"), dim)
    variables = _get(spec, "variables", path, list, required=False, default=default_variables(dim - 1))
    if len(variables) != dim - 1 or not all(isinstance(v, str) for v in variables):
        raise SceneError(f"expected {dim - 1} parameter names", _ptr(path, "variables"))
    dom_path = _ptr(path, "domain")
    domain = _get(spec, "domain", path, list)
    if len(domain) != dim - 1:
        raise SceneError(f"expected {dim - 1} intervals", dom_path)
    box = [_interval(b, _ptr(dom_path, i)) for i, b in enumerate(domain)]
    singular = []
    for i, item in enumerate(_get(spec, "singular", path, list, required=False, default=[])):
        ip = _ptr(_ptr(path, "singular"), i)
        if not isinstance(item, dict):
            raise SceneError("expected an object with 'param' and 'value'", ip)
        p = _get(item, "param", ip)
        if isinstance(p, str) and p in variables:
            p = variables.index(p)
        if not _is(p, int) or not 0 <= p < dim - 1:
            raise SceneError("unknown parameter", _ptr(ip, "param"))
        singular.append((p, float(_get(item, "value", ip, float))))
    orientation = _get(spec, "orientation", path, int, required=False, default=1)
    if orientation not in (1, -1):
        raise SceneError("orientation must be 1 or -1", _ptr(path, "orientation"))
    name = _get(spec, "name", path, str, required=False, default="surface")
    for i, text in enumerate(comps):
        try:
            parse(text, variables)
        except ExprSyntaxError as exc:
            _check_syntax(exc, _ptr(_ptr(path, "components"), i))
    try:
        return Hypersurface(comps, box, variables, name=name, singular=singular, orientation=orientation)
    except ValueError as exc:
        raise SceneError(str(exc), path) from exc


def _expr_curve(spec, path, count, build):
    comps = _expressions(_get(spec, "components", path, list), _ptr(path, "components"), count)
    variable = _get(spec, "variable", path, str, required=False, default="t")
    domain = _interval(_get(spec, "domain", path, list), _ptr(path, "domain"))
    for i, text in enumerate(comps):
        try:
            parse(text, [variable])
        except ExprSyntaxError as exc:
            _check_syntax(exc, _ptr(_ptr(path, "components"), i))
    return build(comps, domain, variable)


def _curve(name, spec, dim, surface, path):
    if not isinstance(spec, dict):
        raise SceneError("expected an object", path)
    kind = _get(spec, "kind", path, str, required=False, default="ambient")
    if kind == "ambient":
        if ("gallery" in spec) == ("components" in spec):
            raise SceneError("give exactly one of 'gallery' or 'components'", path)
        if "gallery" in spec:
            _, c = _gallery_call(gallery.CURVES, gallery.CURVE_PARAMS, spec, path)
            if c.dim != dim:
                raise SceneError(f"gallery curve lives in E^{c.dim}, scene dim is {dim}", path)
            c.name = name
            return c
        return _expr_curve(
            spec, path, dim, lambda comps, dom, var: Curve.from_expressions(comps, dom, var, name=name)
        )
    if surface is None:
        raise SceneError(f"{kind} curves need a surface", _ptr(path, "kind"))
    if kind == "surface":
        return _expr_curve(
            spec,
            path,
            dim - 1,
            lambda comps, dom, var: SurfaceCurve.from_expressions(surface, comps, dom, var, name=name),
        )
    if kind == "geodesic":
        start = _numbers(_get(spec, "start", path), _ptr(path, "start"), dim - 1)
        if ("direction" in spec) == ("velocity_u" in spec):
            raise SceneError("give exactly one of 'direction' or 'velocity_u'", path)
        if "direction" in spec:
            direction = _numbers(spec["direction"], _ptr(path, "direction"), dim)
            parametric = False
        else:
            direction = _numbers(spec["velocity_u"], _ptr(path, "velocity_u"), dim - 1)
            parametric = True
        length = _get(spec, "length", path, float)
        step = _get(spec, "step", path, float, required=False, default=1e-3)
        if length <= 0:
            raise SceneError("length must be positive", _ptr(path, "length"))
        if step <= 0:
            raise SceneError("step must be positive", _ptr(path, "step"))
        return GeodesicSpec(name, start, direction, float(length), float(step), parametric)
    raise SceneError(f"unknown curve kind {kind!r}", _ptr(path, "kind"))


def _analysis(spec, path) -> Analysis:
    if not isinstance(spec, dict):
        raise SceneError("expected an object", path)
    a = Analysis()
    for key in spec:
        if key not in ("samples", "tol", "hypothesis_tol", "seed"):
            raise SceneError(f"unknown analysis setting {key!r}", _ptr(path, key))
    a.samples = _get(spec, "samples", path, int, required=False, default=a.samples)
    a.tol = float(_get(spec, "tol", path, float, required=False, default=a.tol))
    a.hypothesis_tol = float(_get(spec, "hypothesis_tol", path, float, required=False, default=a.hypothesis_tol))
    a.seed = _get(spec, "seed", path, int, required=False, default=a.seed)
    if a.samples < 2:
        raise SceneError("samples must be at least 2", _ptr(path, "samples"))
    if a.tol <= 0 or a.hypothesis_tol <= 0:
        raise SceneError("tolerances must be positive", path)
    return a


def scene_from_dict(data, source: str = "") -> Scene:
    if not isinstance(data, dict):
        raise SceneError("scene must be a JSON object", "")
    known = {"schema", "dim", "surface", "curves", "analysis", "description"}
    for key in data:
        if key not in known:
            raise SceneError(f"unknown field {key!r}", _ptr("", key))
    schema = _get(data, "schema", "", int, required=False, default=SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise SceneError(f"unsupported schema version {schema}", "/schema")
    dim = _get(data, "dim", "", int)
    if dim < 2:
        raise SceneError("dim must be at least 2", "/dim")
    surface = None
    if "surface" in data:
        if dim < 3:
            raise SceneError("hypersurfaces need dim >= 3", "/dim")
        surface = _surface(data["surface"], dim, "/surface")
    curves = {}
    for name, spec in _get(data, "curves", "", dict, required=False, default={}).items():
        curves[name] = _curve(name, spec, dim, surface, _ptr("/curves", name))
    analysis = _analysis(_get(data, "analysis", "", dict, required=False, default={}), "/analysis")
    return Scene(dim, surface, curves, analysis, source)


def load_scene(path) -> Scene:
    """Parse and validate a scene file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise SceneError(f"scene file not found: {path}", "") from exc
    except json.JSONDecodeError as exc:
        raise SceneError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "") from exc
    return scene_from_dict(data, str(path))
