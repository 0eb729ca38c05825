"""Smoke tests for the python bindings.

The compiled module location comes from ORTHOHAPTIC_PYMOD (set by ctest to
the build directory); the package sources from ORTHOHAPTIC_PYSRC.
"""

import math
import os
import sys

import numpy as np
import pytest

_mod_dir = os.environ.get("ORTHOHAPTIC_PYMOD")
if _mod_dir:
    sys.path.insert(0, _mod_dir)

core = pytest.importorskip("_core")


def test_rotation_helpers():
    r = core.rot_axis_angle(np.array([0.0, 0.0, 1.0]), 0.5)
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-14)
    w = core.rot_log(r)
    assert np.allclose(w, [0.0, 0.0, 0.5], atol=1e-14)


def test_stage_round_trip():
    params = core.OrthoglideParams()
    p = np.array([0.1, 0.0, 0.0])
    rho = core.ik(p, params)
    assert rho[0] == pytest.approx(1.1, abs=1e-12)
    assert rho[1] == pytest.approx(math.sqrt(0.99), abs=1e-12)
    back = core.fk(rho, params)
    assert np.allclose(back, p, atol=1e-9)
    j = core.jacobian(np.zeros(3), params)
    assert np.allclose(j, np.eye(3), atol=1e-12)


def test_errors_are_python_exceptions():
    params = core.OrthoglideParams()
    with pytest.raises(ValueError):
        core.ik(np.array([0.0, 1.2, 0.0]), params)


def test_wrist_variants():
    a = core.WristAngles(0.2, -0.3, 2.0)
    r = core.hybrid_fk(a)
    b = core.hybrid_ik(r)
    assert b.theta1 == pytest.approx(0.2, abs=1e-12)
    assert b.phi == pytest.approx(2.0, abs=1e-12)

    geom = core.SphericalLegGeometry.standard()
    theta = np.array([0.1, -0.2, 0.15])
    r = core.spm_fk(theta, geom)
    assert np.allclose(core.spm_ik(r, geom), theta, atol=1e-8)
    assert np.allclose(core.spm_jacobian(np.eye(3), geom), np.eye(3), atol=1e-12)


def test_transmission():
    cfg = core.UJointConfig(math.radians(30.0))
    out = core.ujoint_output(math.radians(45.0), cfg)
    assert math.degrees(out) == pytest.approx(49.1066053508691, abs=1e-9)
    assert core.ujoint_speed_ratio(0.0, cfg) == pytest.approx(
        1.0 / math.cos(math.radians(30))
    )
    assert core.ujoint_speed_ratio(math.pi / 2, cfg) == pytest.approx(
        math.cos(math.radians(30))
    )
    assert core.chain_output(1.234, math.radians(40.0)) == pytest.approx(1.234, abs=1e-13)


def test_workspace_and_cube():
    spec = core.WorkspaceSpec()
    assert core.is_member(np.zeros(3), spec)
    assert not core.is_member(np.array([0.0, 1.2, 0.0]), spec)
    cube = core.largest_cube(spec, 9)
    assert cube.axis_aligned
    assert 1.0 < cube.edge < 1.15

    rows = core.conditioning_map(spec, np.zeros(3), np.zeros(3), [1, 1, 1])
    assert len(rows) == 1
    assert rows[0]["member"]
    assert rows[0]["kappa"] == pytest.approx(1.0, abs=1e-12)


def test_device_round_trip():
    for params in (core.DeviceParams.hybrid(), core.DeviceParams.spherical()):
        home = core.isotropic_home(params)
        pose = core.device_fk(home.q, params)
        assert np.allclose(pose.p, np.zeros(3), atol=1e-15)
        jac = core.device_jacobian(home.q, params)
        assert np.allclose(jac.translational, np.eye(3), atol=1e-12)
        assert np.allclose(jac.coupling_tr, 0.0)
        sv = np.linalg.svd(jac.rotational, compute_uv=False)
        assert np.allclose(sv, 1.0, atol=1e-12)

    params = core.DeviceParams.spherical()
    assert np.allclose(core.home_axis(params), np.ones(3) / math.sqrt(3.0), atol=1e-12)
    assert core.home_axis_tilt(params) == pytest.approx(
        math.acos(1.0 / math.sqrt(3.0)), abs=1e-12
    )


def test_sizing_scales_linearly():
    spec = core.DesignSpec()
    spec.required_edge = 0.25
    spec.psi = 2.0
    small = core.size_device(spec)
    spec.required_edge = 0.5
    big = core.size_device(spec)
    assert big.params.L == pytest.approx(2.0 * small.params.L, rel=1e-9)
    assert big.sigma_max <= 2.0 + 1e-9
