"""Right-hand sides of the surface systems in the variables (η, q).

q is the trace of the (pseudo-)potential on z = η, so q_t = φ_t|_s + η_tφ_z|_s and the
dynamic conditions are pulled back onto the surface with X = φ_x|_s, Z = φ_z|_s.
"""
from typing import NamedTuple, Tuple

import numpy as np

from src.evolution.dno import dno_samples
from src.spectral.grid import (
    anchored_antiderivative,
    anchored_antiderivative_samples,
    spectral_dealias,
    spectral_derivative,
)
from src.tools.errors import EdgeGuardViolation, ErrorMessages
from src.types.grid import PeriodicGrid, RealField, require_same_grid
from src.types.params import PhysicalParams
from src.types.state import SolverConfig, SurfaceState


class SurfaceRates(NamedTuple):
    eta_t: np.ndarray
    q_t: np.ndarray
    gq: np.ndarray


def surface_velocity_samples(eta_x: np.ndarray, q_x: np.ndarray, gq: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    vertical = (gq + eta_x * q_x) / (1.0 + eta_x**2)
    return q_x - eta_x * vertical, vertical


def surface_velocities(eta: RealField, q: RealField, gq: RealField) -> Tuple[RealField, RealField]:
    """(X, Z) = (φ_x, φ_z) on the surface from q_x = X + η_xZ and Gq = Z − η_xX."""
    grid = require_same_grid(eta, q, gq)
    eta_x = spectral_derivative(eta.samples, grid)
    q_x = spectral_derivative(q.samples, grid)
    horizontal, vertical = surface_velocity_samples(eta_x, q_x, gq.samples)
    return eta.like(horizontal), eta.like(vertical)


def curvature_samples(eta: np.ndarray, grid: PeriodicGrid, dealias: bool = True) -> np.ndarray:
    eta_x = spectral_derivative(eta, grid)
    eta_xx = spectral_derivative(eta, grid, 2)
    kappa = eta_xx * (1.0 + eta_x**2) ** -1.5
    return spectral_dealias(kappa, grid) if dealias else kappa


def surface_tension_term(eta: RealField, sigma: float, dealias: bool = True) -> RealField:
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    if sigma == 0.0:
        return eta.like(np.zeros(eta.grid.n_points))
    return eta.like(sigma * curvature_samples(eta.samples, eta.grid, dealias))


def edge_guard_peak(eta: np.ndarray, q: np.ndarray, grid: PeriodicGrid, fraction: float = 0.125) -> Tuple[str, float, float]:
    """Largest |η| or |q| inside the outer ``fraction`` of the box on either side."""
    band = max(1, int(np.ceil(fraction * grid.n_points)))
    edges = np.r_[0:band, grid.n_points - band:grid.n_points]
    worst = ("eta", 0.0, float(grid.nodes[0]))
    for name, values in (("eta", eta), ("q", q)):
        local = np.abs(values[edges])
        index = int(np.argmax(local))
        if local[index] > worst[1]:
            worst = (name, float(local[index]), float(grid.nodes[edges[index]]))
    return worst


def check_edge_guard(eta: np.ndarray, q: np.ndarray, grid: PeriodicGrid, config: SolverConfig, t: float = None) -> None:
    if config.edge_guard_threshold is None:
        return
    name, magnitude, location = edge_guard_peak(eta, q, grid, config.edge_guard_fraction)
    if magnitude > config.edge_guard_threshold:
        raise EdgeGuardViolation(name, location, magnitude, config.edge_guard_threshold, t=t)


def _check_depth(eta: np.ndarray, h: float) -> None:
    peak = float(np.max(np.abs(eta)))
    if peak >= h:
        raise ValueError(ErrorMessages.SURFACE_BELOW_BOTTOM.format(peak=peak, depth=h))


def surface_rates(
    eta: np.ndarray,
    q: np.ndarray,
    grid: PeriodicGrid,
    params: PhysicalParams,
    config: SolverConfig,
    shear: bool,
    t: float = None,
) -> SurfaceRates:
    """Array kernel behind both right-hand sides; with omega = 0 the shear branch adds exact zeros."""
    check_edge_guard(eta, q, grid, config, t)
    _check_depth(eta, params.h)

    def clean(values: np.ndarray) -> np.ndarray:
        return spectral_dealias(values, grid) if config.dealias else values

    gq = dno_samples(eta, q, grid, params.h, config.dno_order, config.dealias)
    eta_x = spectral_derivative(eta, grid)
    q_x = spectral_derivative(q, grid)
    horizontal, vertical = surface_velocity_samples(eta_x, q_x, gq)

    eta_t = gq
    if shear:
        omega = params.omega
        eta_t = gq + omega * spectral_derivative(clean(0.5 * eta * eta), grid)

    q_t = -0.5 * clean(horizontal**2 + vertical**2) + clean(eta_t * vertical) - params.g * eta
    if params.sigma > 0.0:
        q_t = q_t + params.sigma * curvature_samples(eta, grid, config.dealias)
    if shear:
        drift = anchored_antiderivative_samples(eta_t, grid)
        q_t = q_t + (
            omega * clean(eta * horizontal)
            - 0.5 * omega**2 * clean(eta * eta)
            + omega * drift
        )
    return SurfaceRates(eta_t=eta_t, q_t=q_t, gq=gq)


def rhs_irrotational(state: SurfaceState, params: PhysicalParams, config: SolverConfig) -> Tuple[RealField, RealField]:
    if not params.irrotational:
        raise ValueError(ErrorMessages.RHS_REQUIRES_IRROTATIONAL.format(omega=params.omega))
    rates = surface_rates(state.eta.samples, state.q.samples, state.grid, params, config, shear=False, t=state.t)
    return state.eta.like(rates.eta_t), state.q.like(rates.q_t)


def rhs_constant_vorticity(state: SurfaceState, params: PhysicalParams, config: SolverConfig) -> Tuple[RealField, RealField]:
    rates = surface_rates(state.eta.samples, state.q.samples, state.grid, params, config, shear=True, t=state.t)
    return state.eta.like(rates.eta_t), state.q.like(rates.q_t)


def to_canonical(q: RealField, eta: RealField, omega: float) -> RealField:
    """ζ = q − (ω/2)∂ₓ⁻¹η with the decaying (x_min-anchored) antiderivative."""
    require_same_grid(q, eta)
    if omega == 0.0:
        return q
    primitive = anchored_antiderivative(eta)
    return q.like(q.samples - 0.5 * omega * primitive.samples)
