"""Smoke tests for the orbitforge Python bindings."""

import math
import os

import pytest

import orbitforge as of

CONFIG_DIR = os.environ.get(
    "ORBITFORGE_CONFIG_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "configs"),
)


def read_config(name):
    with open(os.path.join(CONFIG_DIR, name)) as f:
        return f.read()


def test_version():
    assert of.__version__


def test_time_helpers():
    assert of.sec_to_nanos(1.0) == 1_000_000_000
    assert of.min_to_nanos(10.0) == 600_000_000_000
    assert of.nanos_to_sec(500_000_000) == pytest.approx(0.5)


def test_sampling_time():
    assert of.sampling_time(of.sec_to_nanos(1000.0), of.sec_to_nanos(1.0), 101) == of.sec_to_nanos(10.0)
    assert of.sampling_time(5, 1, 1001) == 1
    with pytest.raises(ValueError):
        of.sampling_time(100, 1, 1)


def test_mean_motion_period():
    n, period = of.mean_motion_period(of.MU_EARTH, 7.0e6)
    assert period == pytest.approx(5828.51663768601558, rel=1e-12)
    assert n * period == pytest.approx(2.0 * math.pi, rel=1e-12)


def test_element_round_trip():
    oe = of.ClassicElements()
    oe.a = 7.0e6
    oe.e = 1.0e-4
    oe.i = math.radians(33.3)
    oe.raan = math.radians(48.2)
    oe.argp = math.radians(347.8)
    oe.f = math.radians(85.3)

    r, v = of.elem2rv(of.MU_EARTH, oe)
    assert abs(r[0] + 2816801.60102349392) < 1e-3
    assert abs(v[2] - 1204.77118007167134) < 1e-6

    back = of.rv2elem(of.MU_EARTH, r, v)
    assert back.a == pytest.approx(oe.a, rel=1e-9)
    assert back.e == pytest.approx(oe.e, abs=1e-9)
    assert back.f == pytest.approx(oe.f, rel=1e-9)


def test_mrp_algebra():
    sigma = of.mrp_shadow([2.0, 0.0, 0.0])
    assert sigma[0] == pytest.approx(-0.5)

    dcm = of.mrp_to_dcm([0.0, 0.0, 0.0])
    assert dcm[0][0] == 1.0 and dcm[0][1] == 0.0

    back = of.dcm_to_mrp(dcm)
    assert all(abs(c) < 1e-15 for c in back)

    rel = of.mrp_relative([0.1, 0.2, -0.3], [0.1, 0.2, -0.3])
    assert all(abs(c) < 1e-12 for c in rel)


def test_check_inertia():
    valid, _ = of.check_inertia([[900.0, 0, 0], [0, 800.0, 0], [0, 0, 700.0]])
    assert valid
    invalid, report = of.check_inertia([[1000.0, 0, 0], [0, 100.0, 0], [0, 0, 100.0]])
    assert not invalid
    assert "triangle" in report


def test_ephemeris():
    sun = of.create_body("sun")
    name, r, v = of.ephemeris_state(sun, "2000 Jan 1 11:59:28.000 (UTC)", 0)
    assert name == "sun"
    assert abs(r[0] - of.AU) < 1.0
    with pytest.raises(ValueError):
        of.create_body("mars")
    assert of.epoch_offset_seconds("2000 Jan 1 11:59:28.000 (UTC)") == pytest.approx(-32.0)


def test_config_validation():
    text = read_config("basic_orbit.yaml")
    assert of.validate_config(text) == []
    normalized = of.normalize_config(text)
    assert "mass: 750" in normalized

    bad = text.replace("900.0", "10000.0")
    assert any("triangle" in v for v in of.validate_config(bad))


def test_execution_order():
    tree = of.show_execution_order(read_config("attitude_control.yaml"), "attitudeControl")
    assert "extForceTorque [300]" in tree
    assert tree.index("[300]") < tree.index("[201]") < tree.index("[200]") < tree.index("[199]")


def test_run_scenario(tmp_path):
    outputs = of.run_scenario(
        read_config("earth_orbit.yaml"),
        "earthOrbit",
        stop_s=300.0,
        csv=str(tmp_path / "out.csv"),
        jsonl=str(tmp_path / "out.jsonl"),
    )
    r = outputs["r_BN_N"]
    assert r["columns"] == ["rx_m", "ry_m", "rz_m"]
    assert r["values"].shape[0] == 3
    assert r["values"].shape[1] == len(r["t"])
    # orbital radius stays near 7000 km on this short arc
    import numpy as np

    radius = np.linalg.norm(r["values"], axis=0)
    assert np.allclose(radius, 7.0e6, rtol=2e-3)
    assert (tmp_path / "out.csv").exists()
    assert (tmp_path / "out.jsonl").exists()


def test_run_attitude_scenario():
    outputs = of.run_scenario(
        read_config("attitude_control.yaml"), "attitudeControl", mode="hillPoint", stop_s=600.0
    )
    sigma = outputs["sigma_BR"]
    final = [sigma["values"][c][-1] for c in range(3)]
    assert math.sqrt(sum(c * c for c in final)) < 1e-3


def test_monte_carlo(tmp_path):
    result = of.execute_simulations(
        read_config("earth_orbit.yaml"),
        "earthOrbit",
        runs=4,
        archive=str(tmp_path / "mc"),
        seed=42,
        dispersions=["uniform:spacecraft.mass:700:800"],
    )
    assert result["ok"] == 4
    assert os.path.exists(result["manifest"])
