import json

import numpy as np
import pytest

from nksphere import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_vector_forms():
    np.testing.assert_array_equal(cli.parse_vector("e1"), [1, 0, 0, 0, 0, 0, 0])
    np.testing.assert_array_equal(cli.parse_vector("-e4"), [0, 0, 0, -1, 0, 0, 0])
    np.testing.assert_allclose(
        cli.parse_vector("0.5*e3-2*e7"), [0, 0, 0.5, 0, 0, 0, -2.0]
    )
    np.testing.assert_array_equal(
        cli.parse_vector("0,0,1,0,1,1,0"), [0, 0, 1, 0, 1, 1, 0]
    )
    with pytest.raises(cli.UsageError):
        cli.parse_vector("1,2,3")
    with pytest.raises(cli.UsageError):
        cli.parse_vector("e8")


def test_plane_command_associative(capsys):
    code, out, _ = run(capsys, "plane", "e1", "e2", "e3")
    assert code == 0
    data = json.loads(out)
    assert data["phi"] == pytest.approx(1.0)
    assert data["classification"] == "associative"


def test_plane_command_totally_real(capsys):
    code, out, _ = run(capsys, "plane", "e1", "e2", "e7")
    assert code == 0
    data = json.loads(out)
    assert data["phi"] == pytest.approx(0.0, abs=1e-12)
    assert data["classification"] == "totally_real"
    np.testing.assert_allclose(data["associator"], [0, 0, 0, -2, 0, 0, 0], atol=1e-12)


def test_plane_command_rejects_dependent(capsys):
    code, _, err = run(capsys, "plane", "e1", "e1", "e3")
    assert code == 2
    assert "singular" in err


def test_sphere_command_small_associative(capsys):
    code, out, _ = run(
        capsys,
        "sphere", "--plane", "e1", "e2", "e3", "--radius", "0.5",
        "--center", "0,0,0,0,0,0,0.8660254037844386",
    )
    assert code == 0
    data = json.loads(out)
    assert data["report"]["is_slant"]
    assert data["report"]["angle_rad"] == pytest.approx(np.pi / 3, abs=1e-9)


def test_sphere_command_lists_centers(capsys):
    code, out, _ = run(capsys, "sphere", "--plane", "e1", "e2", "e7", "--radius", "0.5")
    assert code == 0
    data = json.loads(out)
    centers = np.asarray(data["admissible_centers"])
    assert centers.shape == (2, 7)
    np.testing.assert_allclose(centers[0], -centers[1], atol=1e-14)
    np.testing.assert_allclose(np.abs(centers[0][3]), np.sqrt(3) / 2, atol=1e-12)


def test_sphere_command_not_slant(capsys):
    code, out, _ = run(
        capsys,
        "sphere", "--plane", "e1", "e2", "e7", "--radius", "0.5",
        "--center", "0,0,0,0,0.8660254037844386,0,0",
    )
    assert code == 0
    data = json.loads(out)
    assert data["report"]["classification"] == "not_slant"


def test_sphere_command_rejects_inconsistent_center(capsys):
    code, _, err = run(
        capsys,
        "sphere", "--plane", "e1", "e2", "e7", "--radius", "0.5",
        "--center", "0,0,0,1,0,0,0",
    )
    assert code == 2
    assert "sphere" in err or "orthogonal" in err


def test_orbit_family_command(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "0")
    assert code == 0
    data = json.loads(out)
    assert data["geometry"]["slant_cos"] == pytest.approx(1 / 3, abs=1e-12)
    assert data["geometry"]["H_norm"] < 1e-10
    assert abs(data["geometry"]["K"]) < 1e-8


def test_orbit_explicit_landmark_matches_family(capsys):
    code, out, _ = run(capsys, "orbit", "0,0,1,0,1,1,0")
    assert code == 0
    data = json.loads(out)
    assert data["geometry"]["slant_cos"] == pytest.approx(1 / 3, abs=1e-12)


def test_orbit_rejects_degenerate_point(capsys):
    code, _, err = run(capsys, "orbit", "e2")
    assert code == 2
    assert "gamma" in err


def test_orbit_mesh_and_figure(capsys, tmp_path):
    out = tmp_path / "orbit.json"
    code, _, _ = run(capsys, "orbit", "--family", "0.4", "--mesh", "8",
                     "--out", str(out))
    assert code == 0
    mesh = (tmp_path / "orbit_mesh.csv").read_text().splitlines()
    assert mesh[0] == "t,s,x1,x2,x3,y0,y1,y2,y3"
    assert len(mesh) == 1 + 64
    assert (tmp_path / "orbit_orbit.png").exists()
    data = json.loads(out.read_text())
    assert data["geometry"]["H_norm"] < 1e-10


def test_scan_small_grid(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "scan", "--resolution", "2", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x1,a,b,c,slant_cos,slant_angle_rad,mean_H_norm,gauss_K,regular"
    assert len(lines) == 1 + 16
    summary = json.loads((tmp_path / "scan_summary.json").read_text())
    assert summary["max_slant_cos_refined"] <= 1 / 3 + 1e-9
    assert (tmp_path / "scan_heatmap.png").exists()
    assert (tmp_path / "scan_hist.png").exists()


def test_scan_stdout_csv(capsys):
    code, out, err = run(capsys, "scan", "--resolution", "2,2,2,2", "--no-figures")
    assert code == 0
    assert out.splitlines()[0].startswith("x1,a,b,c")
    assert json.loads(err)["bins_total"] == 34


def test_table_json(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    quads = json.loads(out)["quadruples"]
    assert [1, 2, 3, 1] in quads
    assert [4, 7, 3, 1] in quads


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "--format", "text")
    assert code == 0
    assert "-e0" in out


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--only", "octonion_core", "--format", "text")
    assert code == 0
    assert "octonion_core" in out
    assert "table_fidelity" in out


def test_verify_rejects_unknown_tolerance(capsys):
    code, _, err = run(capsys, "verify", "--tolerance", "nope=1")
    assert code == 2
    assert "unknown tolerance" in err


def test_verify_accepts_tolerance_override(capsys):
    code, out, _ = run(capsys, "verify", "--only", "octonion_core",
                       "--tolerance", "algebra=1e-9")
    assert code == 0
    data = json.loads(out)
    assert data["tolerances"]["algebra"] == 1e-9


def test_plane_text_and_csv_formats(capsys):
    code, out, _ = run(capsys, "plane", "e1", "e2", "e7", "--format", "text")
    assert code == 0
    assert "associator_norm" in out
    code, out, _ = run(capsys, "plane", "e1", "e2", "e7", "--format", "csv")
    assert code == 0
    assert out.startswith("key,value")


def test_sphere_great_rejects_nonzero_center(capsys):
    code, _, err = run(capsys, "sphere", "--plane", "e1", "e2", "e3",
                       "--radius", "1.0", "--center", "e7")
    assert code == 2
    assert "center 0" in err


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "--only", "octonion_core", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "suite,check,passed,residual,tolerance,n"


def test_verify_deterministic_bytes(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "--only", "octonion_core", "--seed", "7",
                     "--out", str(out1)]) == 0
    assert cli.main(["verify", "--only", "octonion_core", "--seed", "7",
                     "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
