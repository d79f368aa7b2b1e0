import numpy as np
import pytest

from src.evolution.rhs import (
    edge_guard_peak,
    rhs_constant_vorticity,
    rhs_irrotational,
    surface_tension_term,
    surface_velocities,
    to_canonical,
)
from src.evolution.dno import dno_apply
from src.spectral.grid import make_grid
from src.tools.errors import EdgeGuardViolation
from src.types.grid import RealField
from src.types.params import PhysicalParams
from src.types.state import SolverConfig, SurfaceState

PERIODIC = SolverConfig(edge_guard_threshold=None)


def make_state(n=64, length=32.0, amplitude=0.01, width=2.0, q_amplitude=0.0):
    grid = make_grid(n, length, -length / 2)
    shape = np.exp(-((grid.nodes / width) ** 2))
    eta = RealField(grid=grid, samples=amplitude * shape)
    q = eta.like(q_amplitude * shape)
    return SurfaceState(t=0.0, eta=eta, q=q)


def test_rhs_irrotational_refuses_vorticity():
    state = make_state()
    with pytest.raises(ValueError):
        rhs_irrotational(state, PhysicalParams(omega=0.5), PERIODIC)


def test_vorticity_rhs_reduces_to_irrotational():
    state = make_state(q_amplitude=0.02)
    params = PhysicalParams()
    a_eta, a_q = rhs_irrotational(state, params, PERIODIC)
    b_eta, b_q = rhs_constant_vorticity(state, params, PERIODIC)
    assert np.max(np.abs(a_eta.samples - b_eta.samples)) < 1e-15
    assert np.max(np.abs(a_q.samples - b_q.samples)) < 1e-15


def test_rest_state_is_stationary():
    state = make_state(amplitude=0.0)
    eta_t, q_t = rhs_irrotational(state, PhysicalParams(), SolverConfig())
    assert np.all(eta_t.samples == 0.0) and np.all(q_t.samples == 0.0)


def test_linearized_rates_for_small_surface():
    # 小振幅: η_t ≈ G₀q, q_t ≈ −gη
    state = make_state(amplitude=1e-6, q_amplitude=1e-6)
    params = PhysicalParams(g=9.81)
    eta_t, q_t = rhs_irrotational(state, params, PERIODIC)
    flat = dno_apply(state.eta, state.q, params.h, order=0)
    assert np.max(np.abs(eta_t.samples - flat.samples)) < 1e-10
    assert np.max(np.abs(q_t.samples + 9.81 * state.eta.samples)) < 1e-10


def test_surface_velocities_on_flat_surface():
    state = make_state(amplitude=0.0, q_amplitude=0.02)
    gq = dno_apply(state.eta, state.q, 1.0)
    horizontal, vertical = surface_velocities(state.eta, state.q, gq)
    x = state.grid.nodes
    assert np.allclose(horizontal.samples, -2.0 * x / 4.0 * 0.02 * np.exp(-((x / 2.0) ** 2)), atol=1e-12)
    assert np.array_equal(vertical.samples, gq.samples)


def test_surface_tension_term_small_slope():
    grid = make_grid(64, 2.0 * np.pi)
    eta = RealField(grid=grid, samples=1e-3 * np.cos(grid.nodes))
    term = surface_tension_term(eta, 0.1)
    assert np.max(np.abs(term.samples + 0.1 * eta.samples)) < 1e-9
    assert np.all(surface_tension_term(eta, 0.0).samples == 0.0)
    with pytest.raises(ValueError):
        surface_tension_term(eta, -1.0)


def test_to_canonical():
    grid = make_grid(16, 2.0 * np.pi, -np.pi)
    x = grid.nodes
    eta = RealField(grid=grid, samples=np.cos(x))
    q = eta.like(0.3 * np.sin(2.0 * x))
    assert to_canonical(q, eta, 0.0) is q
    zeta = to_canonical(q, eta, 2.0)
    assert np.max(np.abs(zeta.samples - (q.samples - np.sin(x)))) < 1e-13


def test_edge_guard_peak_locates_worst_sample():
    state = make_state(length=16.0, amplitude=0.01, width=4.0)
    name, magnitude, location = edge_guard_peak(state.eta.samples, state.q.samples, state.grid)
    assert name == "eta"
    assert magnitude > 1e-4
    # 保护区为两端各 1/8，最差样本可以恰好落在边界节点 |x| = 6 上
    assert abs(location) >= 0.75 * 8.0


def test_edge_guard_violation_raised_by_rhs():
    state = make_state(length=16.0, amplitude=0.01, width=4.0)
    with pytest.raises(EdgeGuardViolation) as info:
        rhs_irrotational(state, PhysicalParams(), SolverConfig())
    assert info.value.field == "eta"
    assert info.value.t == 0.0


def test_edge_guard_disabled_with_null_threshold():
    state = make_state(length=16.0, amplitude=0.01, width=4.0)
    eta_t, _ = rhs_irrotational(state, PhysicalParams(), PERIODIC)
    assert np.all(np.isfinite(eta_t.samples))
