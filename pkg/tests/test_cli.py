import json

import pytest

from solgeo.cli import main

THETA_ROW_M1 = "-1.000000000000,2.347062254033,0.309858529206"


def run(argv):
    return main(argv)


def test_generate_obj_counts(tmp_path):
    out = tmp_path / "mesh.obj"
    assert run(["generate", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    vertices = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert len(vertices) == 64 * 16
    assert len(faces) == 2 * 63 * 15


def test_generate_deterministic(tmp_path):
    a, b = tmp_path / "a.obj", tmp_path / "b.obj"
    assert run(["generate", "--output", str(a)]) == 0
    assert run(["generate", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_obj_indices_in_range(tmp_path):
    out = tmp_path / "m.obj"
    run(["generate", "--nu", "4", "--nv", "3", "--output", str(out)])
    lines = out.read_text().splitlines()
    n_vertices = sum(1 for l in lines if l.startswith("v "))
    assert n_vertices == 12
    for line in lines:
        if line.startswith("f "):
            idx = [int(tok) for tok in line.split()[1:]]
            assert len(idx) == 3
            assert all(1 <= i <= n_vertices for i in idx)


def test_generate_x2_swaps_roles(tmp_path):
    a, b = tmp_path / "x1.obj", tmp_path / "x2.obj"
    run(["generate", "--nu", "4", "--nv", "2", "--output", str(a)])
    run(["generate", "--nu", "4", "--nv", "2", "--variant", "x2",
         "--output", str(b)])
    va = [l.split()[1:] for l in a.read_text().splitlines()
          if l.startswith("v ")]
    vb = [l.split()[1:] for l in b.read_text().splitlines()
          if l.startswith("v ")]
    for (xa, ya, za), (xb, yb, zb) in zip(va, vb):
        assert xb == ya and yb == xa
        assert float(zb) == pytest.approx(-float(za), abs=1e-12)


def test_generate_ply(tmp_path):
    out = tmp_path / "mesh.ply"
    assert run(["generate", "--format", "ply", "--nu", "3", "--nv", "3",
                "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "ply"
    assert "element vertex 9" in lines
    assert "element face 8" in lines
    assert lines[-1].startswith("3 ")


def test_profile_stdout(capsys):
    assert run(["profile", "--u-min", "-2.0", "--u-max", "-1.0",
                "--nu", "5"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "u,theta,f,Psi,Phi,K"
    assert lines[-1].startswith(THETA_ROW_M1)


def test_profile_implicit_footer(capsys):
    assert run(["profile", "--kind", "implicit", "--u-min", "0",
                "--u-max", "0.25", "--nu", "6", "--c", "1.0",
                "--theta-start", "2.2"]) == 0
    out = capsys.readouterr().out
    assert "# halt_reason:" in out


def test_verify_polynomial_stdout(capsys):
    assert run(["verify", "--suite", "polynomial"]) == 0
    captured = capsys.readouterr()
    reports = json.loads(captured.out)
    assert len(reports) == 1
    assert reports[0]["check_id"] == "polynomial_obstruction"
    assert reports[0]["status"] == "pass"


def test_verify_writes_report_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run(["verify", "--suite", "ambient", "--output", str(out)]) == 0
    reports = json.loads(out.read_text())
    assert all(r["status"] == "pass" for r in reports)
    stdout = capsys.readouterr().out
    assert "ambient_sectional_e1_e3: pass" in stdout


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2


def test_curvature_text(capsys):
    assert run(["curvature", "--point", "0,0,0", "--plane", "E1,E3"]) == 0
    out = capsys.readouterr().out
    assert "sectional curvature: -1.000000000000" in out


def test_curvature_left_invariant(capsys):
    assert run(["curvature", "--point", "1,2,0.5", "--plane", "E1,E2",
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["sectional_curvature"] == pytest.approx(1.0, abs=1e-12)


def test_curvature_numeric_plane(capsys):
    assert run(["curvature", "--point", "0,0,0",
                "--plane", "1:1:0,0:0:1"]) == 0
    out = capsys.readouterr().out
    # mixed horizontal direction against the vertical: K = -1
    assert "sectional curvature: -1.000000000000" in out


def test_curvature_degenerate_plane_is_runtime_error(capsys):
    assert run(["curvature", "--plane", "E1,E1"]) == 1
    assert "error" in capsys.readouterr().err


def test_curvature_malformed_plane_is_usage_error(capsys):
    assert run(["curvature", "--plane", "E1"]) == 2
    assert run(["curvature", "--point", "1,2", "--plane", "E1,E2"]) == 2


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nu": 8, "nv": 3, "u_min": -2.0,
                               "u_max": -0.5}))
    out = tmp_path / "m.obj"
    assert run(["generate", "--config", str(cfg), "--nu", "5",
                "--output", str(out)]) == 0
    vertices = [l for l in out.read_text().splitlines()
                if l.startswith("v ")]
    assert len(vertices) == 5 * 3  # flag overrides config nu


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["generate", "--config", str(cfg)]) == 2
    assert "unknown config keys" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["generate", "--u-min", "1", "--u-max", "-1"],
    ["generate", "--nu", "1"],
    ["generate", "--kind", "explicit", "--u-max", "0.5", "--u-min", "-1"],
    ["generate", "--kind", "implicit", "--u-min", "-0.5", "--u-max", "0.5"],
    ["generate", "--kind", "implicit", "--u-min", "0", "--u-max", "1",
     "--c", "-2"],
    ["profile", "--step", "-1"],
])
def test_validation_exit_codes(argv, capsys):
    assert run(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_runtime_failure_exit_code(capsys):
    # implicit integration halts immediately: no usable profile
    code = run(["profile", "--kind", "implicit", "--u-min", "0",
                "--u-max", "0.5", "--nu", "8", "--theta-start", "1.4"])
    assert code == 1
    assert "error:" in capsys.readouterr().err
