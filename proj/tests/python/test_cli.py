"""End-to-end tests of the command-line tool.

ORTHOHAPTIC_CLI (set by ctest) points at the built binary.
"""

import os
import subprocess
import tempfile

import pytest

CLI = os.environ.get("ORTHOHAPTIC_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="ORTHOHAPTIC_CLI not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


@pytest.fixture()
def workdir(tmp_path):
    cfg = tmp_path / "dev.cfg"
    cfg.write_text("L = 1\nrho_min = 0.1\nrho_max = 1.9\nwrist = hybrid\n")
    return tmp_path


def test_ik_known_values(workdir):
    res = run("ik", "--config", str(workdir / "dev.cfg"), "--pose", "0.1,0,0,0,0,0")
    assert res.returncode == 0
    assert "1.1" in res.stdout
    assert "0.994987437" in res.stdout
    assert "gamma_deg: 0 0 0" in res.stdout


def test_fk_inverts_ik(workdir):
    res = run("fk", "--config", str(workdir / "dev.cfg"),
              "--joints", "1.1,0.994987437106620,0.994987437106620,10,0,0")
    assert res.returncode == 0
    assert "p: 0.1 " in res.stdout
    assert "pitch_deg: 10" in res.stdout


def test_jacobian_home(workdir):
    res = run("jacobian", "--config", str(workdir / "dev.cfg"), "--pose", "0,0,0,0,0,0")
    assert res.returncode == 0
    assert "sigma(J_t): 1 1 1" in res.stdout
    assert "kappa: 1" in res.stdout


def test_unknown_config_key(workdir):
    bad = workdir / "bad.cfg"
    bad.write_text("legs = 4\n")
    res = run("cube", "--config", str(bad))
    assert res.returncode == 2
    assert "legs" in res.stderr


def test_missing_config_flag():
    res = run("cube")
    assert res.returncode == 2


def test_kinematic_error_exit_code(workdir):
    res = run("ik", "--config", str(workdir / "dev.cfg"), "--pose", "0,1.2,0,0,0,0")
    assert res.returncode == 3
    assert "OutsideCylinder" in res.stderr


def test_transmission_table(workdir):
    out = workdir / "trans.csv"
    res = run("transmission", "--beta", "30", "--steps", "360", "--out", str(out))
    assert res.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "theta_in_deg,theta_out_deg,speed_ratio"
    assert len(lines) == 361  # header + 360 rows
    row45 = dict(zip(lines[0].split(","), lines[46].split(",")))
    assert abs(float(row45["theta_in_deg"]) - 45.0) < 1e-12
    assert abs(float(row45["theta_out_deg"]) - 49.1066053508691) < 1e-9
    ratios = [float(l.split(",")[2]) for l in lines[1:]]
    assert max(ratios) == pytest.approx(1.1547005383792515, abs=1e-12)
    assert min(ratios) == pytest.approx(0.8660254037844387, abs=1e-12)

    # byte-identical reruns
    out2 = workdir / "trans2.csv"
    run("transmission", "--beta", "30", "--steps", "360", "--out", str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_workspace_map_single_point(workdir):
    out = workdir / "map.csv"
    res = run("workspace-map", "--config", str(workdir / "dev.cfg"),
              "--box", "0,0,0,0,0,0", "--n", "1,1,1", "--out", str(out))
    assert res.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,z,sigma_min,sigma_max,kappa,member"
    assert lines[1] == "0,0,0,1,1,1,true"


def test_cube_result_file(workdir):
    out = workdir / "cube.txt"
    res = run("cube", "--config", str(workdir / "dev.cfg"), "--samples", "9",
              "--out", str(out))
    assert res.returncode == 0
    text = out.read_text()
    values = dict(line.split(" = ") for line in text.splitlines())
    assert 1.0 < float(values["edge"]) < 1.15
    assert float(values["center_x"]) == pytest.approx(float(values["center_y"]))


def test_optimize_round_trip(workdir):
    out = workdir / "sized.cfg"
    res = run("optimize", "--config", str(workdir / "dev.cfg"), "--edge", "0.5",
              "--psi", "2", "--out", str(out))
    assert res.returncode == 0

    # the result file is a valid config reproducing the design
    res2 = run("cube", "--config", str(out), "--samples", "9",
               "--out", str(workdir / "cube2.txt"))
    assert res2.returncode == 0

    text = out.read_text()
    values = dict(line.split(" = ") for line in text.splitlines())
    assert float(values["L"]) > 0.5
    assert float(values["psi"]) == 2.0
    assert float(values["rho_min"]) < float(values["rho_max"])


def test_commands_do_not_mutate_the_config(workdir):
    cfg = workdir / "dev.cfg"
    before = cfg.read_bytes()
    run("cube", "--config", str(cfg), "--samples", "9", "--out", str(workdir / "c.txt"))
    run("ik", "--config", str(cfg), "--pose", "0,0,0,0,0,0")
    assert cfg.read_bytes() == before


def test_output_dir_override(workdir):
    env = dict(os.environ, ORTHOHAPTIC_OUT_DIR=str(workdir))
    res = subprocess.run(
        [CLI, "transmission", "--beta", "10", "--steps", "4", "--out", "rel.csv"],
        capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert (workdir / "rel.csv").exists()
