"""Reduced desk-scale runs (n = 128, L = 64) of the three physical regimes."""
import pytest

from src.config.parser import parse_scenario
from src.types.ledger import VORTICITY_NAMES
from src.workflows.runner import run_scenario

pytestmark = pytest.mark.integration


def make_reduced(name, sigma=0.0, omega=0.0, zero_mass=False, checks=None, cadence=10):
    return parse_scenario({
        "name": name,
        "grid": {"n_points": 128, "length": 64.0},
        "params": {"sigma": sigma, "omega": omega},
        "solver": {"dt": 0.01},
        "initial": {"gaussian": {"amplitude": 0.02, "width": 3.0, "zero_mass": zero_mass}},
        "t_end": 2.0,
        "observer_cadence": cadence,
        "checks": checks or [],
    })


def test_irrotational_pulse_conserves_all_densities():
    checks = [{"id": f"drift:T{j}", "tolerance": 1e-5} for j in range(1, 9)] + [
        {"id": "drift:H", "tolerance": 1e-5},
        {"id": "hamiltonian_matches_T2", "tolerance": 1e-12},
        {"id": "residual:idA", "tolerance": 1e-7},
        {"id": "residual:idB", "tolerance": 1e-7},
        {"id": "residual:third_order", "tolerance": 1e-7},
        {"id": "residual:xz_case", "tolerance": 1e-7},
        {"id": "residual:weakA", "tolerance": 1e-3},
        {"id": "residual:weakB", "tolerance": 1e-3},
        {"id": "weak_order", "tolerance": 1.0},
        {"id": "surface_pressure", "tolerance": 1e-3},
        {"id": "area_mass", "tolerance": 1e-10},
        {"id": "vorticity_area", "tolerance": 1e-10},
        {"id": "edge_guard", "tolerance": 1e-10},
    ] + [{"id": f"residual:contour_I{j}", "tolerance": 1e-7} for j in range(1, 9)] + [
        {"id": f"drift:I{j}*", "tolerance": 1e-6} for j in (1, 2, 3, 7)
    ]
    report = run_scenario(make_reduced("reduced-irrotational", checks=checks))
    assert report.failure is None
    failed = {c.id: c.metric for c in report.checks if not c.passed}
    assert not failed
    assert len(report.densities) == 21
    assert set(report.densities[0]) == {"t", "T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "H"}


def test_surface_tension_breaks_t7_only():
    checks = [
        {"id": "drift:T2", "tolerance": 1e-5},
        {"id": "drift:T3", "tolerance": 1e-5},
        {"id": "hamiltonian_matches_T2", "tolerance": 1e-12},
    ]
    report = run_scenario(make_reduced("reduced-tension", sigma=0.05, checks=checks))
    assert report.failure is None
    assert report.passed, report.summary()
    lost = report.drift["T7"].normalized_drift
    corrected = report.drift["T7_tension_corrected"].normalized_drift
    assert lost > 10.0 * corrected


def test_constant_vorticity_pulse_conserves_vorticity_densities():
    checks = [{"id": f"drift:{name}", "tolerance": 1e-4} for name in VORTICITY_NAMES] + [
        {"id": "residual:idA", "tolerance": 1e-7},
        {"id": "residual:idB", "tolerance": 1e-7},
        {"id": "residual:vort_weakA", "tolerance": 1e-3},
        {"id": "residual:vort_weakB", "tolerance": 1e-3},
        {"id": "weak_order", "tolerance": 1.0},
        {"id": "area_mass", "tolerance": 1e-10},
        {"id": "vorticity_area", "tolerance": 1e-10},
        {"id": "edge_guard", "tolerance": 1e-10},
    ]
    scenario = make_reduced("reduced-vorticity", omega=0.5, zero_mass=True, checks=checks)
    report = run_scenario(scenario)
    assert report.failure is None
    failed = {c.id: c.metric for c in report.checks if not c.passed}
    assert not failed
    assert report.include_vorticity
    assert "vT8" in report.densities[-1]


def weak_b_error(report, degree):
    found = [r for r in report.residuals if r.identity == "weakB" and r.degree == degree]
    return found[0].residual * found[0].scale


def test_weak_residual_converges_with_observer_spacing():
    fine = run_scenario(make_reduced("reduced-cadence-10", cadence=10))
    coarse = run_scenario(make_reduced("reduced-cadence-20", cadence=20))
    assert fine.failure is None and coarse.failure is None
    # 观测间隔 0.1 → 0.2，O(Δt²) 误差约变为 4 倍
    ratio = weak_b_error(coarse, 3) / weak_b_error(fine, 3)
    assert 3.0 <= ratio <= 5.0
