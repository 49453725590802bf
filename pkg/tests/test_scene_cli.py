import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from rhelix.cli import main
from rhelix.curve import Curve
from rhelix.errors import ExprSyntaxError, SceneError
from rhelix.hypersurface import Hypersurface, SurfaceCurve
from rhelix.scene import load_scene, scene_from_dict
from rhelix.serialize import canonical_json
from rhelix.theorems import GeodesicSpec

SCENES = Path(__file__).resolve().parent.parent / "scenes"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, data, name="scene.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return p


# scene loading -----------------------------------------------------------------


def test_gallery_scene():
    sc = scene_from_dict({"dim": 3, "surface": {"gallery": "cylinder", "params": {"radius": 1}}})
    assert isinstance(sc.surface, Hypersurface) and sc.surface.name == "cylinder"


def test_explicit_cone_scene_shrinks_domain():
    sc = load_scene(SCENES / "cone_explicit.json")
    assert sc.surface.raw_domain[0][0] == 0.0
    assert sc.surface.domain[0][0] > 0.0
    assert sc.analysis.samples == 32


def test_cone_scene_curves():
    sc = load_scene(SCENES / "cone.json")
    kinds = {type(c) for c in sc.curves.values()}
    assert kinds == {GeodesicSpec, SurfaceCurve}
    assert len(sc.geodesics()) == 3
    cfg = sc.suite_config(seed=5, tol=None)
    assert cfg.seed == 5 and cfg.tol == 1e-6


def test_e4_scene_ambient_curves():
    sc = load_scene(SCENES / "curves_e4.json")
    assert isinstance(sc.curve("w-curve"), Curve) and sc.curve("w-curve").dim == 4
    with pytest.raises(SceneError):
        sc.curve("missing")


@pytest.mark.parametrize(
    "data, pointer",
    [
        ({"dim": 3, "surface": {"gallery": "torus"}}, "/surface/gallery"),
        ({"dim": 3, "surface": {"gallery": "cone", "params": {"angle": 1}}}, "/surface/params/angle"),
        ({"dim": 3, "surface": {"gallery": "cone", "components": ["u1", "u2", "0"]}}, "/surface"),
        ({"dim": 3, "surface": {"components": ["u1", "u2"], "domain": [[0, 1], [0, 1]]}}, "/surface/components"),
        ({"dim": 3, "surface": {"components": ["u1", "u2", "0"], "domain": [[1, 0], [0, 1]]}}, "/surface/domain/0"),
        ({"dim": 3, "surface": {"gallery": "cone"}, "curves": {"g": {"kind": "geodesic", "start": [1, 0]}}},
         "/curves/g"),
        ({"dim": 3, "surface": {"gallery": "cone"},
          "curves": {"g": {"kind": "geodesic", "start": [1, 0], "velocity_u": [0, 1], "length": -1}}},
         "/curves/g/length"),
        ({"dim": 3, "curves": {"c": {"kind": "surface", "components": ["t", "t"], "domain": [0, 1]}}},
         "/curves/c/kind"),
        ({"dim": 3, "curves": {"c": {"kind": "spline"}}}, "/curves/c/kind"),
        ({"dim": 3, "analysis": {"samples": 1}}, "/analysis/samples"),
        ({"dim": 3, "analysis": {"grid": 1}}, "/analysis/grid"),
        ({"dim": 3, "colour": "red"}, "/colour"),
        ({"dim": 3, "schema": 2}, "/schema"),
        ({"dim": "3"}, "/dim"),
        ({}, ""),
    ],
)
def test_scene_errors_carry_pointers(data, pointer):
    with pytest.raises(SceneError) as info:
        scene_from_dict(data)
    assert info.value.path == pointer


def test_expression_error_in_scene_has_pointer_and_position():
    data = {"dim": 3, "surface": {"components": ["u1", "cos(u2", "0"], "domain": [[0, 1], [0, 1]]}}
    with pytest.raises(ExprSyntaxError) as info:
        scene_from_dict(data)
    assert info.value.pointer == "/surface/components/1"
    assert info.value.position == 6


# CLI ------------------------------------------------------------------------


def test_gallery_listing(capsys):
    code, out, _ = run(["gallery"], capsys)
    listing = json.loads(out)
    assert code == 0
    for name in ("hyperplane", "sphere", "cylinder", "cone", "generalized-cylinder-E4", "helicoid",
                 "plane-curve-cylinder"):
        assert name in listing["surfaces"]


def test_analyze_surface_and_dump_normals(tmp_path, capsys):
    normals = tmp_path / "normals.csv"
    code, out, _ = run(["analyze-surface", SCENES / "cone.json", "--dump-normals", normals], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["classification"] == {"r": 1, "strong_r_helix": True}
    assert abs(report["helix_space"]["constants"][0]) == pytest.approx(0.5, abs=1e-8)
    lines = normals.read_text().splitlines()
    assert lines[0] == "u1,u2,x1,x2,x3,N1,N2,N3"
    assert len(lines) == 1 + report["samples"]


def test_analyze_surface_report_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(["analyze-surface", SCENES / "helicoid.json", "--report", dest, "--samples", "40"], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["classification"]["r"] == 0


def test_frenet_single_point(capsys):
    code, out, _ = run(["frenet", SCENES / "curves_e4.json", "w-curve", "--at", "0.3"], capsys)
    data = json.loads(out)
    assert code == 0 and data["valid_depth"] == 4
    assert data["curvatures"][0] == pytest.approx(math.sqrt(5) / 2, abs=1e-12)


def test_frenet_csv(tmp_path, capsys):
    csv = tmp_path / "f.csv"
    code, out, _ = run(["frenet", SCENES / "curves_e4.json", "spiral", "--csv", csv, "--samples", "10"], capsys)
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "t,x1,x2,x3,x4,k1,k2,k3"
    assert len(lines) == 11
    assert len(json.loads(out)["samples"]) == 10


def test_frenet_outside_domain_is_usage_error(capsys):
    code, _, err = run(["frenet", SCENES / "curves_e4.json", "spiral", "--at", "9"], capsys)
    assert code == 2 and json.loads(err)["error"]["type"] == "UsageError"


def test_geodesic_named_and_csv(tmp_path, capsys):
    csv = tmp_path / "g.csv"
    code, out, _ = run(["geodesic", SCENES / "cone.json", "geodesic-a", "--csv", csv], capsys)
    diag = json.loads(out)
    assert code == 0 and diag["length"] == pytest.approx(0.8, abs=1e-14)
    lines = csv.read_text().splitlines()
    assert lines[0] == "s,u1,u2,x1,x2,x3,v1,v2,v3"
    assert len(lines) == 1 + diag["samples"]


def test_geodesic_from_flags(capsys):
    code, out, _ = run(["geodesic", SCENES / "cylinder.json", "--start", "0,0", "--direction", "0,0.6,0.8",
                        "--length", "1", "--step", "0.01"], capsys)
    assert code == 0
    end = json.loads(out)["end_position"]
    assert end[2] == pytest.approx(0.8, abs=1e-12)


def test_geodesic_bad_direction_exit_code(capsys):
    code, _, err = run(["geodesic", SCENES / "cylinder.json", "--start", "0,0", "--direction", "1,0,0",
                        "--length", "1"], capsys)
    assert code == 2 and json.loads(err)["error"]["type"] == "PreconditionError"


def test_geodesic_needs_spec(capsys):
    code, _, err = run(["geodesic", SCENES / "cylinder.json"], capsys)
    assert code == 2


def test_step_too_large_is_numerical_error(capsys):
    code, _, err = run(["geodesic", SCENES / "cone.json", "--start", "1.5,0", "--velocity-u", "0,1",
                        "--length", "3", "--step", "0.8"], capsys)
    assert code == 3 and json.loads(err)["error"]["type"] == "StepTooLarge"


@pytest.mark.parametrize("scene", ["cone.json", "cylinder.json", "helicoid.json"])
def test_verify_exit_zero(scene, capsys):
    code, out, _ = run(["verify", SCENES / scene], capsys)
    assert code == 0
    reports = json.loads(out)
    if scene == "helicoid.json":
        assert {r["status"] for r in reports} == {"vacuous"}


def test_verify_detects_failure(tmp_path, capsys):
    # tolerance below the achievable accuracy makes some conclusion fail
    code, out, _ = run(["verify", SCENES / "cone.json", "--tol", "1e-30"], capsys)
    assert code == 1
    assert "fail" in {r["status"] for r in json.loads(out)}


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["verify", SCENES / "cylinder.json", "--seed", "3", "--report", a], capsys)
    run(["verify", SCENES / "cylinder.json", "--seed", "3", "--report", b], capsys)
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv, code, kind",
    [
        (["verify", "missing.json"], 2, "SceneError"),
        (["frobnicate"], 2, "UsageError"),
        (["verify"], 2, "UsageError"),
        (["frenet", SCENES / "cone.json", "nope"], 2, "SceneError"),
        (["verify", SCENES / "curves_e4.json", "--samples", "x"], 2, "UsageError"),
    ],
)
def test_error_paths(argv, code, kind, capsys):
    got, out, err = run(argv, capsys)
    payload = json.loads(err)["error"]
    assert got == code and payload["type"] == kind and payload["exit_code"] == code
    assert out == ""


def test_invalid_json_and_syntax_errors(tmp_path, capsys):
    code, _, err = run(["verify", write(tmp_path, "{not json")], capsys)
    assert code == 2 and "invalid JSON" in json.loads(err)["error"]["message"]
    bad = write(tmp_path, {"dim": 3, "surface": {"components": ["u1", "u2 +", "0"], "domain": [[0, 1], [0, 1]]}})
    code, _, err = run(["verify", bad], capsys)
    payload = json.loads(err)["error"]
    assert code == 2 and payload["type"] == "SyntaxError"
    assert payload["path"] == "/surface/components/1" and payload["position"] == 4


def test_domain_error_is_numerical(tmp_path, capsys):
    bad = write(tmp_path, {"dim": 3, "surface": {"components": ["u1", "u2", "log(u1)"],
                                                 "domain": [[-1, 1], [0, 1]]}})
    code, _, err = run(["analyze-surface", bad], capsys)
    assert code == 3 and json.loads(err)["error"]["type"] == "DomainError"


def test_canonical_json_format():
    text = canonical_json({"b": [1.0, -0.0, float("nan")], "a": {"z": 0.1, "y": True}})
    assert text == '{\n  "a": {\n    "y": true,\n    "z": 0.10000000000000001\n  },\n  "b": [1, 0, null]\n}\n'


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rhelix", "gallery"], capture_output=True, text=True)
    assert proc.returncode == 0 and "cone" in json.loads(proc.stdout)["surfaces"]
