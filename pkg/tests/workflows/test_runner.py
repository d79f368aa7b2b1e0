import numpy as np
import pytest

from src.config.parser import parse_scenario
from src.workflows.acceptance import acceptance_scenarios
from src.workflows.runner import build_initial_state, run_scenario


def make_scenario(name="rest", amplitude=0.0, n=64, length=32.0, width=2.0, checks=None, **sections):
    raw = {
        "name": name,
        "grid": {"n_points": n, "length": length},
        "solver": {"dt": 0.01},
        "initial": {"gaussian": {"amplitude": amplitude, "width": width}},
        "t_end": 0.1,
        "observer_cadence": 2,
        "checks": checks or [],
    }
    raw.update(sections)
    return parse_scenario(raw)


def test_initial_state_gaussian_centered():
    scenario = make_scenario(amplitude=0.02, width=2.0)
    state = build_initial_state(scenario)
    assert state.grid.x_min == -16.0
    assert state.eta.samples[32] == pytest.approx(0.02)
    assert np.all(state.q.samples == 0.0)


def test_initial_state_zero_mass_pulse():
    scenario = make_scenario(
        amplitude=0.02, length=64.0, n=128,
        initial={"gaussian": {"amplitude": 0.02, "width": 3.0, "zero_mass": True}},
    )
    eta = build_initial_state(scenario).eta
    assert abs(eta.mean()) < 1e-15
    # 峰值仍为 a，保护区内 (|x| ≥ 24) 已衰减到舍入水平
    assert eta.samples[64] == pytest.approx(0.02, rel=1e-12)
    assert np.max(np.abs(eta.samples[np.abs(eta.grid.nodes) >= 24.0])) < 1e-17


def test_initial_state_cosine_mode():
    scenario = make_scenario(initial={"cosine_mode": {"amplitude": 0.01, "mode_index": 2}})
    state = build_initial_state(scenario)
    x = state.grid.nodes
    assert np.allclose(state.eta.samples, 0.01 * np.cos(2.0 * np.pi * 2 * (x + 16.0) / 32.0))


def test_rest_state_passes_every_check():
    checks = [{"id": f"drift:T{j}", "tolerance": 1e-12} for j in range(1, 9)] + [
        {"id": "drift:H", "tolerance": 1e-12},
        {"id": "hamiltonian_matches_T2", "tolerance": 1e-12},
        {"id": "residual:weakA", "tolerance": 1e-12},
        {"id": "residual:weakB", "tolerance": 1e-12},
        {"id": "residual:idA", "tolerance": 1e-12},
        {"id": "residual:contour_I3", "tolerance": 1e-12},
        {"id": "area_mass", "tolerance": 1e-12},
        {"id": "edge_guard", "tolerance": 1e-12},
        {"id": "surface_pressure", "tolerance": 1e-12},
    ]
    report = run_scenario(make_scenario(checks=checks))
    assert report.failure is None
    assert report.passed, report.summary()
    assert report.exit_code == 0
    assert len(report.densities) == 6
    assert all(entry.max_abs_drift == 0.0 for entry in report.drift.values())


def test_unavailable_metric_fails_its_check():
    # ω = 0 且未强制: 没有涡量表，omega_reduction 无指标
    report = run_scenario(make_scenario(checks=[{"id": "omega_reduction", "tolerance": 1.0}]))
    assert report.checks[0].metric is None
    assert not report.passed
    assert report.exit_code == 1


def test_numerical_failure_is_recorded():
    report = run_scenario(make_scenario(amplitude=0.01, length=16.0, width=4.0))
    assert report.failure is not None
    assert report.failure_time == 0.0
    assert report.exit_code == 3


def test_expected_failure_check():
    checks = [{"id": "drift:T3", "tolerance": 1e-12, "expect": "fail"}]
    report = run_scenario(make_scenario(checks=checks))
    # 静水中 T3 不漂移，所以 "预期失败" 的检查不通过
    assert not report.checks[0].passed


def test_acceptance_scenarios_are_valid():
    scenarios = acceptance_scenarios()
    assert [s.name for s in scenarios] == [
        "acceptance-irrotational", "acceptance-tension", "acceptance-vorticity"
    ]
    irrotational, tension, vorticity = scenarios
    assert irrotational.grid.n_points == 256 and irrotational.t_end == 10.0
    assert tension.params.sigma == 0.01
    assert any(c.id == "T7_conserved" and c.expect == "fail" for c in tension.checks)
    assert vorticity.params.omega == 0.5 and vorticity.initial.gaussian.zero_mass
    for scenario in scenarios:
        tolerances = {c.id: c.tolerance for c in scenario.checks}
        assert tolerances["weak_order"] == 1.0
        # Δt = 2.5e-3 × 40 = 0.1，弱形式容差 0.1·Δt²
        weak = [t for cid, t in tolerances.items() if "weak" in cid and cid != "weak_order"]
        assert weak and all(t == pytest.approx(1e-3) for t in weak)
