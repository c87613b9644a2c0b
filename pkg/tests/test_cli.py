import json

import numpy as np
import pytest

from gptcone import cli
from gptcone.fixtures import appendix_measurement, build_fixtures
from gptcone.io import measurement_to_json, save_matrix


def _write_fixture_measurement(tmp_path):
    e1, e2 = appendix_measurement()
    path = tmp_path / "dovm.json"
    path.write_text(json.dumps(measurement_to_json([e1, e2])))
    return str(path)


def _stdout_report(capsys):
    return json.loads(capsys.readouterr().out)


def test_classify_fixture(tmp_path, capsys):
    path = _write_fixture_measurement(tmp_path)
    assert cli.run(["classify-dovm", path]) == 0
    rep = _stdout_report(capsys)
    assert rep["schema"] == "gptcone/1"
    assert rep["class"] == "BQ"
    assert rep["lambda1"] == pytest.approx(-0.5, abs=1e-9)
    assert rep["lambda_d"] == pytest.approx(1.5, abs=1e-9)
    assert rep["witnesses"]["perfect_pair"]["overlap"] == \
        pytest.approx(0.75, abs=1e-9)


def test_classify_povm(tmp_path, capsys):
    p = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    path = tmp_path / "povm.json"
    path.write_text(json.dumps(measurement_to_json([p, np.eye(4) - p])))
    assert cli.run(["classify-dovm", str(path), "--dims", "2x2"]) == 0
    rep = _stdout_report(capsys)
    assert rep["class"] == "POVM"
    assert rep["witnesses"] == {}


def test_classify_bad_dims(tmp_path, capsys):
    path = _write_fixture_measurement(tmp_path)
    assert cli.run(["classify-dovm", path, "--dims", "3x3"]) == 1


def test_discriminate(tmp_path, capsys):
    fx = build_fixtures()
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    save_matrix(p1, fx["rho1"])
    save_matrix(p2, fx["rho2"])
    assert cli.run(["discriminate", str(p1), str(p2)]) == 0
    rep = _stdout_report(capsys)
    overlap = 0.25
    expected = 1.0 - np.sqrt(1.0 - overlap)
    assert rep["helstrom_error"] == pytest.approx(expected, abs=1e-9)
    assert len(rep["helstrom_measurement"]) == 2


def test_discriminate_with_cone(tmp_path, capsys):
    fx = build_fixtures()
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    save_matrix(p1, fx["tau1"])
    save_matrix(p2, fx["tau2"])
    cone_path = tmp_path / "cone.json"
    gens = [np.diag(row).astype(complex) for row in np.eye(4)]
    cone_path.write_text(json.dumps({
        "tag": None, "params": {}, "dim": 4, "dims": [2, 2],
        "generators": [json.loads(json.dumps(
            {"dim": 4,
             "re": g.real.tolist(),
             "im": g.imag.tolist()})) for g in gens],
        "dual_generators": [],
    }))
    rc = cli.run(["discriminate", str(p1), str(p2),
                  "--cone", str(cone_path)])
    assert rc == 0
    rep = _stdout_report(capsys)
    assert rep["helstrom_error"] == pytest.approx(0.0, abs=1e-9)
    assert rep["cone_error"] == pytest.approx(0.0, abs=1e-7)
    assert rep["cone_check"]


def test_build_pses_pass(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = cli.run(["build-pses", "--r", "0.1", "--out", str(out)])
    assert rc == 0
    rep = json.loads(out.read_text())
    assert rep["pass"]
    assert rep["audit"]["pass"]
    assert rep["eps"] == pytest.approx(2.0 * np.sqrt(0.2 / 1.2), abs=1e-12)
    assert rep["discrimination_example"]["overlap"] == \
        pytest.approx(0.1527777777777778, abs=1e-9)


def test_build_pses_fail_past_threshold(capsys):
    assert cli.run(["build-pses", "--r", "0.3"]) == 2
    rep = _stdout_report(capsys)
    assert not rep["pass"]
    assert "discrimination_example" not in rep


def test_build_pses_needs_exactly_one_parameter(capsys):
    assert cli.run(["build-pses"]) == 1
    assert cli.run(["build-pses", "--r", "0.1", "--eps", "0.5"]) == 1


def test_build_pses_eps_form(capsys):
    eps = 2.0 * np.sqrt(0.2 / 1.2)
    assert cli.run(["build-pses", "--eps", str(eps)]) == 0
    rep = _stdout_report(capsys)
    assert rep["r"] == pytest.approx(0.1, abs=1e-12)


def test_simulability_fixture(tmp_path, capsys):
    path = _write_fixture_measurement(tmp_path)
    assert cli.run(["simulability", path]) == 0
    rep = _stdout_report(capsys)
    assert rep["status"] == "NonSimulable"
    assert rep["n_copy_overlaps"] == pytest.approx(
        [0.75, 0.75**2, 0.75**3], abs=1e-12)


def test_simulability_shrunk_bloch(capsys):
    assert cli.run(["simulability", "--shrunk-bloch", "0.5"]) == 0
    rep = _stdout_report(capsys)
    assert rep["overlap"] == pytest.approx(0.375, abs=1e-12)
    assert rep["pass"]


def test_simulability_povm_fails(tmp_path, capsys):
    p = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    path = tmp_path / "povm.json"
    path.write_text(json.dumps(measurement_to_json([p, np.eye(4) - p])))
    assert cli.run(["simulability", str(path)]) == 2
    rep = _stdout_report(capsys)
    assert rep["status"] == "Inconclusive"


def test_simulability_needs_one_source(tmp_path, capsys):
    path = _write_fixture_measurement(tmp_path)
    assert cli.run(["simulability"]) == 1
    assert cli.run(["simulability", path, "--shrunk-bloch", "0.5"]) == 1


def test_symmetry_two_symmetry(capsys):
    assert cli.run(["symmetry", "--check", "two-symmetry"]) == 0
    rep = _stdout_report(capsys)
    assert rep["pair_one_overlap"] == pytest.approx(0.25, abs=1e-10)
    assert rep["pass"]


def test_symmetry_ses_orbit(capsys):
    assert cli.run(["symmetry", "--check", "ses-orbit"]) == 0
    rep = _stdout_report(capsys)
    assert rep["pass"]


def test_verify_appendix(capsys):
    assert cli.run(["verify-appendix"]) == 0
    rep = _stdout_report(capsys)
    assert rep["pass"]
    assert all(c["ok"] for c in rep["checks"].values())


def test_verify_all_fast(capsys):
    assert cli.run(["verify-all", "--fast"]) == 0
    rep = _stdout_report(capsys)
    assert rep["pass"]


def test_usage_errors(capsys):
    assert cli.run(["no-such-command"]) == 1
    assert cli.run([]) == 1
    assert cli.run(["discriminate", "/nonexistent/a.json",
                    "/nonexistent/b.json"]) == 1


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("GPTCONE_SEED", "12345")
    assert cli.run(["symmetry", "--check", "ses-orbit"]) == 0
    rep = _stdout_report(capsys)
    assert rep["pass"]


def test_out_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "rep.json"
    path = _write_fixture_measurement(tmp_path)
    assert cli.run(["classify-dovm", path, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert rep["class"] == "BQ"
