"""Smoke tests for the python bindings."""

import json
import math

import pytest

nh = pytest.importorskip("nhsense")


def test_expm2_identity():
    sx = nh.Cx2Matrix.pauli_x()
    u = nh.expm2(sx, -1j * math.pi / 2)
    rows = u.tolist()
    assert abs(rows[0][0]) < 1e-14
    assert abs(rows[0][1] + 1j) < 1e-14


def test_eig2_matches_gap():
    cfg = nh.SensorConfig()
    h = nh.bare_hamiltonian(cfg)
    (l0, l1), (v0, v1) = nh.eig2(h)
    assert abs(abs(l0 - l1) - 2 * abs(cfg.energy())) < 1e-12
    assert abs(v0.c1 / v0.c0) == pytest.approx(0.3015, abs=1e-9) or abs(
        v1.c1 / v1.c0
    ) == pytest.approx(0.3015, abs=1e-9)


def test_closed_form_population_matching():
    cfg = nh.SensorConfig()
    e = abs(cfg.energy())
    point = nh.closed_form_evolution(cfg, math.pi / (2 * e))
    assert point.population_s < 1e-18


def test_stroboscopic_sweep_band():
    cfg = nh.SensorConfig()
    t = math.pi / (2 * abs(cfg.energy()))
    plan = nh.SegmentPlan.from_total_time(cfg, t, 5)
    grid = [(-2.0 + 0.4 * i) * 1e-3 for i in range(11)]
    sweep = nh.sweep_lambda(plan, grid)
    max_chi = max(abs(c) for c in sweep["chis"])
    assert 1018 - 97 < max_chi < 1018 + 97


def test_noise_formula():
    model = nh.NoiseModel()
    model.eta_h, model.eta_v = 0.05, 0.06
    model.photon_budget_n = 100000
    assert nh.noisy_population_mean(0.34, model) == pytest.approx(0.3463)
    rep = nh.estimate_ensemble(0.34, model, 1389.0, 5000, 77)
    assert rep.std_s_prime == pytest.approx(nh.std_s_prime(0.34, model), rel=0.08)


def test_decompose_roundtrip():
    target = nh.qwp(0.3) @ nh.hwp(-0.2)
    fit = nh.decompose_operator(target, starts=24)
    assert fit.converged
    assert fit.residual < 1e-6


def test_run_scenario_json():
    cfg = json.loads(nh.default_config("sweep-lambda"))
    assert cfg["scenario"] == "sweep-lambda"
    cfg["grid"]["points"] = 5
    out = nh.run_scenario(json.dumps(cfg))
    assert out["columns"][0] == "lambda_eps"
    assert len(out["rows"]) == 5
