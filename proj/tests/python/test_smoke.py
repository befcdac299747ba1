# Copyright 2026 The hybridrelay Authors
# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import hybridrelay as hr


def test_special_functions():
    assert hr.lambert_w0(math.e) == pytest.approx(1.0, rel=1e-14)
    assert hr.gamma_upper_regularized(4.0, 4.0) == pytest.approx(0.4334701203667089, abs=1e-14)
    assert hr.rate_to_threshold(420e6, 5e8) == pytest.approx(2 ** 1.68 - 1, rel=1e-13)
    with pytest.raises(ValueError):
        hr.lambert_w0(-1.0)


def test_default_parameters():
    params = hr.default_parameters()
    assert params["thz.antenna_gain"] == pytest.approx(1e4)
    assert params["geometry.r_c_m"] == 200.0
    assert params["rate.direct_slots"] == 1


def test_analyze_default_point():
    out = hr.analyze()
    assert out["hrs"] == pytest.approx(0.90, abs=0.02)
    assert out["hrs_rf_part"] + out["hrs_thz_part"] == pytest.approx(out["hrs"], rel=1e-12)
    assert out["tau_rf"] == pytest.approx(2 ** 21 - 1, rel=1e-14)


def test_parameters_are_applied():
    far = hr.analyze({"geometry.r_sd_m": 80.0, "rate.target_bps": 5e8})
    assert far["thz_only"] < 1e-3
    weak = hr.analyze({"thz.antenna_gain_dbi": 30.0})
    assert weak["thz_only"] < hr.analyze()["thz_only"]


def test_simulate_matches_analysis():
    mc = hr.simulate(protocols=["hrs", "optimal"], trials=20000, seed=3)
    hrs = mc["hrs"]
    assert hrs["trials"] == 20000
    assert hrs["provenance"] == "monte_carlo"
    assert abs(hrs["value"] - hr.analyze()["hrs"]) <= max(0.01, 1.5 * hrs["half_width"])
    assert mc["optimal"]["value"] >= hrs["value"]
    again = hr.simulate(protocols=["hrs"], trials=20000, seed=3, workers=2)
    assert again["hrs"]["value"] == hrs["value"]


def test_iso_coverage():
    lam = hr.iso_coverage(target=0.9, density_thz=4e-3)
    assert lam == pytest.approx(5e-4, rel=0.25)


def test_errors():
    with pytest.raises(hr.ConfigError):
        hr.analyze({"rf.colour": 1.0})
    with pytest.raises(ValueError):
        hr.simulate(protocols=["nonsense"], trials=10)
    with pytest.raises(hr.NumericalError):
        hr.iso_coverage(target=0.999999, hi=1e-6)


def test_run_sweep(tmp_path):
    text = (
        "schema = 1\nexperiment.kind = rate_sweep\nexperiment.protocols = hrs, direct_rf\n"
        "experiment.grid = 400e6, 600e6\nexperiment.trials = 500\n"
    )
    out = tmp_path / "sweep.csv"
    rows = hr.run_sweep(text, str(out))
    assert [r["protocol"] for r in rows] == ["hrs", "direct_rf", "hrs", "direct_rf"]
    assert rows[0]["analytical"] > rows[2]["analytical"]
    assert all(r["status"] == "ok" for r in rows)
    assert out.read_text().startswith("# hybridrelay")
