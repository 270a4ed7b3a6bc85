import json
import math

import numpy as np
import pytest

from isosurf.cli import main
from isosurf.errors import ConfigError
from isosurf.io import (CSV_HEADER, grid_mesh, load_config, parse_config, parse_grid, read_csv, read_obj,
                        write_csv, write_json, write_obj)

HELICOID = {
    "signature": "simply",
    "subgroup": {"phi": 1.0, "c": 0.5},
    "curve": {"plane": "xz", "kind": "poly", "params": {"g": [0.0, 0.3, 0.2], "f": [0.0, 1.0]}},
    "domain": {"u": [0.5, 2.0], "t": [0.0, 3.0]},
}


def write_config(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(tmp_path, *args):
    return main(list(args) + ["--out", str(tmp_path / "out")])


# --- io -------------------------------------------------------------------------

def test_parse_grid():
    assert parse_grid("4x5") == (4, 5)
    assert parse_grid([3, 2]) == (3, 2)
    for bad in ("4", "axb", "1x9"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


def test_parse_config_fields():
    cfg = parse_config({**HELICOID, "grid": "8x6", "tol": 1e-7, "solve": {"solver": "x"}})
    assert cfg.sig.value == "simply" and cfg.subgroup.c == 0.5
    assert cfg.u_range == (0.5, 2.0) and cfg.grid == (8, 6) and cfg.tol == 1e-7
    assert cfg.options == {"solve": {"solver": "x"}}


@pytest.mark.parametrize("data", [
    [],
    {"subgroup": {"phi": 1}},
    {"signature": "simply", "subgroup": {"phi": 1, "omega": 2}},
    {"signature": "lorentz"},
    {"domain": {"u": [1, 0]}},
    {"domain": {"t": "x"}},
    {"curve": {"plane": "xy", "kind": "blob"}},
])
def test_parse_config_rejects(data):
    with pytest.raises(ConfigError):
        parse_config(data)


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="line 1"):
        load_config(bad)


def test_mesh_and_file_round_trips(tmp_path):
    pts = np.random.default_rng(0).normal(size=(3, 4, 3))
    verts, faces = grid_mesh(pts)
    assert verts.shape == (12, 3) and faces.shape == (6, 4) and faces.min() == 1 and faces.max() == 12
    write_obj(tmp_path / "m.obj", verts, faces)
    v2, f2 = read_obj(tmp_path / "m.obj")
    np.testing.assert_array_equal(v2, verts)
    np.testing.assert_array_equal(f2, faces)
    write_csv(tmp_path / "t.csv", ["a", "b"], [(0.1, 1 / 3), (2.0, -1e-300)])
    header, rows = read_csv(tmp_path / "t.csv")
    assert header == ["a", "b"] and rows == [[0.1, 1 / 3], [2.0, -1e-300]]


def test_json_nulls_non_finite(tmp_path):
    write_json(tmp_path / "x.json", {"a": np.float64(np.nan), "b": [1.0, math.inf], "c": np.int64(3)})
    doc = json.loads((tmp_path / "x.json").read_text())
    assert doc == {"schema": "isosurf/1", "a": None, "b": [1.0, None], "c": 3}


# --- generate -------------------------------------------------------------------

def test_generate_grid_combinatorics(tmp_path):
    cfg = write_config(tmp_path, HELICOID)
    assert run(tmp_path, "generate", "--config", cfg, "--grid", "4x4") == 0
    verts, faces = read_obj(tmp_path / "out" / "surface.obj")
    assert len(verts) == 16 and len(faces) == 9
    header, rows = read_csv(tmp_path / "out" / "surface.csv")
    assert header == CSV_HEADER and len(rows) == 16
    summary = json.loads((tmp_path / "out" / "generate.json").read_text())
    assert summary["family"] == "Z2" and summary["vertices"] == 16


def test_generate_sphere_vertices_on_quadric(tmp_path):
    p, c1, c2 = 2.0, 0.6, -0.4
    data = {"signature": "simply",
            "subgroup": {"a": p * c1, "b": p * c2, "c1": c1, "c2": c2},
            "curve": {"plane": "xz", "kind": "parabola", "params": [p]},
            "domain": {"u": [-2, 2], "t": [-2, 2]}, "grid": "12x12"}
    assert run(tmp_path, "generate", "--config", write_config(tmp_path, data)) == 0
    v, _ = read_obj(tmp_path / "out" / "surface.obj")
    assert np.max(np.abs(v[:, 2] - (v[:, 0] ** 2 + v[:, 1] ** 2) / (2 * p))) <= 1e-10
    _, rows = read_csv(tmp_path / "out" / "surface.csv")
    K = np.array(rows)[:, 5]
    np.testing.assert_allclose(K, 1 / p**2, atol=1e-10)


def test_generate_non_admissible_names_obstruction(tmp_path, capsys):
    data = {**HELICOID, "curve": {"plane": "xz", "kind": "line", "params": [2, 0, 0, 1]}}
    assert run(tmp_path, "generate", "--config", write_config(tmp_path, data)) == 3
    err = capsys.readouterr().err
    assert "NotAdmissible" in err and "isotropic line" in err
    assert not (tmp_path / "out" / "surface.obj").exists()


def test_generate_figures(tmp_path):
    cfg = write_config(tmp_path, HELICOID)
    assert run(tmp_path, "generate", "--config", cfg, "--grid", "6x6", "--figures") == 0
    png = tmp_path / "out" / "surface.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_config_errors_exit_2(tmp_path, capsys):
    assert run(tmp_path, "generate", "--config", str(tmp_path / "none.json")) == 2
    assert run(tmp_path, "generate", "--config", write_config(tmp_path, {"signature": "simply"})) == 2
    assert run(tmp_path, "generate", "--config", write_config(tmp_path, HELICOID), "--grid", "0x3") == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


# --- classify -------------------------------------------------------------------

@pytest.mark.parametrize("sub, line", [
    ({"phi": 1, "c": 1}, "II helicoidal; orbit: helix; ruled: no"),
    ({"a": 1, "c1": 1}, "III parabolic rotation; orbit: parabola; ruled: no"),
    ({"a": 1}, "VI translation; orbit: line; ruled: yes"),
])
def test_classify_lines(tmp_path, capsys, sub, line):
    cfg = write_config(tmp_path, {"signature": "simply", "subgroup": sub})
    assert main(["classify", "--config", cfg]) == 0
    assert capsys.readouterr().out.strip() == line


def test_classify_unclassifiable_exit_3(tmp_path, capsys):
    cfg = write_config(tmp_path, {"signature": "pseudo", "subgroup": {"phi": 1, "a": 1}})
    assert main(["classify", "--config", cfg]) == 3
    assert "nearest cell: I" in capsys.readouterr().err


# --- solve ------------------------------------------------------------------------

def solve_config(solver, profile, params, signature="simply", domain=(0.5, 2.0)):
    return {"signature": signature, "domain": {"t": [-0.5, 0.5]}, "grid": "30x5",
            "solve": {"solver": solver, "profile": profile, "domain": list(domain), "params": params}}


def test_solve_cmc_matches_logarithmoid(tmp_path):
    H0, h0, h1 = 0.4, 0.1, 0.3
    data = solve_config("H_helicoidal_i", {"kind": "constant", "params": [H0]}, {"h0": h0, "h1": h1})
    assert run(tmp_path, "solve", "--config", write_config(tmp_path, data)) == 0
    header, rows = read_csv(tmp_path / "out" / "curve.csv")
    s, z = np.array(rows)[:, 0], np.array(rows)[:, 3]
    rest = z - H0 * s * s / 2
    basis = np.stack([np.ones_like(s), np.log(s)], axis=1)
    fit = np.linalg.lstsq(basis, rest, rcond=None)[0]
    assert np.max(np.abs(rest - basis @ fit)) <= 1e-10
    assert fit[1] == pytest.approx(h1 - H0 * 0.25, abs=1e-10)
    summary = json.loads((tmp_path / "out" / "solve.json").read_text())
    assert summary["roundtrip_max_error"] <= 1e-5


def test_solve_flat_arctan_form(tmp_path):
    c, phi, k1 = 0.5, 1.0, 1.5
    data = solve_config("K_helicoidal_i", {"kind": "constant", "params": [0.0]},
                        {"c": c, "phi": phi, "k0": 0.0, "k1": k1})
    assert run(tmp_path, "solve", "--config", write_config(tmp_path, data), "--figures") == 0
    _, rows = read_csv(tmp_path / "out" / "curve.csv")
    s, z = np.array(rows)[:, 0], np.array(rows)[:, 3]
    q = s * np.sqrt(k1 - (c / phi) ** 2 / s**2)
    closed = q + (c / phi) * np.arctan(c / (phi * q))
    np.testing.assert_allclose(z - z[0], closed - closed[0], atol=1e-9)
    header, table = read_csv(tmp_path / "out" / "roundtrip.csv")
    assert header[-1] == "abs_error" and max(r[-1] for r in table) <= 1e-5
    assert (tmp_path / "out" / "roundtrip.png").exists()


@pytest.mark.parametrize("solve, code", [
    ({"solver": "nope"}, 2),
    ({"solver": "K_parabolic_i", "profile": {"kind": "constant", "params": [1]}, "domain": [0.5, 2],
      "params": {"a": 1}}, 2),
    ({"solver": "K_parabolic_i", "profile": {"kind": "constant", "params": [1]}, "domain": [0.5, 2],
      "params": {"a": 1, "b": 1, "c1": 1, "c2": 1, "k0": 0, "k1": 0, "zeta": 1}}, 2),
    ({"solver": "K_helicoidal_ni", "profile": {"kind": "constant", "params": [-0.5]}, "domain": [0.5, 2],
      "params": {"c": 1, "phi": 1, "k0": 1, "k1": 1}}, 3),
])
def test_solve_errors(tmp_path, solve, code):
    data = {"signature": "simply", "solve": solve}
    assert run(tmp_path, "solve", "--config", write_config(tmp_path, data)) == code


def test_solve_tolerance_breach_exits_4(tmp_path):
    data = solve_config("K_parabolic_i", {"kind": "sin", "params": [0.5, 1.0, 0.0]},
                        {"a": 1.0, "b": 0.5, "c1": 0.3, "c2": 0.7, "k0": 0.0, "k1": 0.0})
    assert run(tmp_path, "solve", "--config", write_config(tmp_path, data), "--tol", "1e-30") == 4


# --- curvature / verify -----------------------------------------------------------

def test_curvature_records(tmp_path):
    cfg = write_config(tmp_path, HELICOID)
    assert run(tmp_path, "curvature", "--config", cfg, "--grid", "5x3") == 0
    doc = json.loads((tmp_path / "out" / "curvature.json").read_text())
    assert len(doc["records"]) == 15 and doc["closed_form"]
    rec = doc["records"][0]
    assert set(rec) == {"u", "t", "K_numeric", "H_numeric", "K_closed", "H_closed", "det_g"}
    assert rec["K_numeric"] == pytest.approx(rec["K_closed"], abs=1e-12)


def test_curvature_without_closed_form(tmp_path):
    data = {**HELICOID, "subgroup": {"c1": 1.0, "a": 0.0}, "domain": {"u": [0.5, 2.0], "t": [0, 1]}}
    data["curve"] = {"plane": "xy", "kind": "line", "params": [0, 0, 1, 1]}
    cfg = write_config(tmp_path, data)
    # shears are never admissible, so the report stops at the admissibility check
    assert run(tmp_path, "curvature", "--config", cfg) == 3
    data["subgroup"] = {"phi": 1.0, "a": 0.5}
    assert run(tmp_path, "curvature", "--config", write_config(tmp_path, data), "--grid", "3x3") == 0
    doc = json.loads((tmp_path / "out" / "curvature.json").read_text())
    assert doc["family"] == "Y8" and not doc["closed_form"]
    assert all(r["K_closed"] is None for r in doc["records"])


def test_verify_default_run_passes(tmp_path, capsys):
    assert run(tmp_path, "verify") == 0
    doc = json.loads((tmp_path / "out" / "verify.json").read_text())
    assert doc["passed"] and len(doc["suites"]) == 9
    assert capsys.readouterr().out.count("PASS") == 9


def test_verify_reports_injected_sign_flip(tmp_path, capsys):
    cfg = write_config(tmp_path, {"suites": ["differential"]})
    assert run(tmp_path, "verify", "--config", cfg, "--inject-sign-flip") == 4
    out = capsys.readouterr()
    assert "FAIL closed-form vs numeric curvature" in out.out
    doc = json.loads((tmp_path / "out" / "verify.json").read_text())
    assert doc["suites"][0]["detail"]["failing"]


def test_verify_unknown_suite(tmp_path):
    cfg = write_config(tmp_path, {"suites": ["astrology"]})
    assert run(tmp_path, "verify", "--config", cfg) == 2
