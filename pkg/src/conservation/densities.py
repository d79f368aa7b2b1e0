"""Integrated conserved densities of the surface systems.

Each density is evaluated pointwise from the state and the analytic right-hand side at that
state, then integrated with the periodic trapezoid rule. ``scales`` holds ∮|integrand| dx.
"""
from typing import Dict, Optional

import numpy as np

from src.bulk.extension import bottom_trace
from src.evolution.rhs import to_canonical
from src.spectral.grid import integrate_samples, spectral_derivative, x_field
from src.types.bulk import HarmonicExtension
from src.types.grid import RealField
from src.types.ledger import (
    HAMILTONIAN_NAME,
    IRROTATIONAL_NAMES,
    TENSION_RATE_NAME,
    VORTICITY_NAMES,
    DensitySample,
)
from src.types.params import PhysicalParams
from src.types.state import Snapshot, SurfaceState

Integrands = Dict[str, np.ndarray]


def tension_excess(eta_x: np.ndarray, sigma: float) -> np.ndarray:
    """σ(√(1+η_x²) − 1), written to keep precision for small slopes."""
    slope2 = eta_x * eta_x
    return sigma * slope2 / (np.sqrt(1.0 + slope2) + 1.0)


def irrotational_integrands(state: SurfaceState, eta_t: RealField, params: PhysicalParams) -> Integrands:
    grid = state.grid
    t, g = state.t, params.g
    x = x_field(grid).samples
    eta, q, et = state.eta.samples, state.q.samples, eta_t.samples
    eta_x = spectral_derivative(eta, grid)

    t2 = 0.5 * q * et + 0.5 * g * eta * eta + tension_excess(eta_x, params.sigma)
    return {
        "T1": -eta_x * q,
        "T2": t2,
        "T3": eta.copy(),
        "T4": q + g * t * eta,
        "T5": x * eta + t * eta_x * q,
        "T6": 0.5 * eta * eta - t * q - 0.5 * g * t**2 * eta,
        "T7": (
            q * (eta - x * eta_x)
            - 4.0 * t * t2
            + 3.5 * g * t * eta * eta
            - 3.5 * g * t**2 * q
            - (7.0 / 6.0) * g**2 * t**3 * eta
        ),
        "T8": (x + eta * eta_x) * q + g * t * x * eta + 0.5 * t**2 * g * eta_x * q,
    }


def vorticity_integrands(state: SurfaceState, eta_t: RealField, params: PhysicalParams) -> Integrands:
    """Densities in the canonical pair (ζ, η); with ω = 0 every entry equals its irrotational twin."""
    grid = state.grid
    t, g, omega = state.t, params.g, params.omega
    x = x_field(grid).samples
    eta, q, et = state.eta.samples, state.q.samples, eta_t.samples
    eta_x = spectral_derivative(eta, grid)
    zeta = to_canonical(state.q, state.eta, omega).samples

    # T2 is read with the surface trace q (energy, not a canonical-variable density)
    t2 = 0.5 * q * et + 0.5 * g * eta * eta + tension_excess(eta_x, params.sigma)
    return {
        "vT1": -eta_x * zeta,
        # ½ωηη_x·q with η_t the full right-hand side: equals ωηη_x·q + ½qGq, the conserved energy
        "vT2": t2 + (0.5 * omega * eta * eta_x * q + (omega**2 / 6.0) * eta**3),
        "vT3": eta.copy(),
        "vT4": zeta + g * t * eta + (0.5 * omega * x * eta + omega * t * zeta * eta_x),
        "vT5": x * eta + t * eta_x * zeta,
        "vT6": 0.5 * eta * eta - t * zeta - 0.5 * g * t**2 * eta + 0.5 * omega * x * t * eta,
        "vT8": (
            (x + eta * eta_x) * zeta
            + g * t * x * eta
            + 0.5 * t**2 * g * eta_x * zeta
            + (-0.25 * omega * x * x * eta + (omega / 12.0) * eta**3)
        ),
    }


def _integrate_all(integrands: Integrands, grid) -> Dict[str, float]:
    return {name: integrate_samples(values, grid) for name, values in integrands.items()}


def _scales(integrands: Integrands, grid) -> Dict[str, float]:
    return {name: integrate_samples(np.abs(values), grid) for name, values in integrands.items()}


def densities_irrotational(state: SurfaceState, eta_t: RealField, params: PhysicalParams) -> DensitySample:
    """T1..T8 integrated; eta_t must be the right-hand side at this very state."""
    integrands = irrotational_integrands(state, eta_t, params)
    return DensitySample(
        t=state.t,
        irrotational=_integrate_all(integrands, state.grid),
        scales=_scales(integrands, state.grid),
    )


def densities_vorticity(state: SurfaceState, eta_t: RealField, params: PhysicalParams) -> DensitySample:
    integrands = vorticity_integrands(state, eta_t, params)
    return DensitySample(
        t=state.t,
        irrotational={},
        vorticity=_integrate_all(integrands, state.grid),
        scales=_scales(integrands, state.grid),
    )


def hamiltonian(state: SurfaceState, gq: RealField, params: PhysicalParams) -> float:
    eta, q = state.eta.samples, state.q.samples
    eta_x = spectral_derivative(eta, state.grid)
    energy = 0.5 * (q * gq.samples + params.g * eta * eta) + tension_excess(eta_x, params.sigma)
    return integrate_samples(energy, state.grid)


def bottom_moments(ext: HarmonicExtension) -> Dict[str, float]:
    """bQ = ∮Q, bQx2 = ∮Q_x², bxQx2 = ∮xQ_x² and bxQ = ∮xQ for the bottom trace Q."""
    bottom = bottom_trace(ext)
    grid = bottom.grid
    Q = bottom.samples
    Q_x = spectral_derivative(Q, grid)
    x = x_field(grid).samples
    return {
        "bQ": integrate_samples(Q, grid),
        "bxQ": integrate_samples(x * Q, grid),
        "bQx2": integrate_samples(Q_x * Q_x, grid),
        "bxQx2": integrate_samples(x * Q_x * Q_x, grid),
    }


def bottom_flux_rates(state: SurfaceState, ext: HarmonicExtension, params: PhysicalParams) -> Dict[str, float]:
    """d/dt ∮T for every density, produced by the flat bed (plus the surface-tension source of T7).

    The balanced total ∮T(t) − ∫₀ᵗ rate dt′ is the conserved quantity in finite depth.
    """
    t, g, h, omega = state.t, params.g, params.h, params.omega
    m = bottom_moments(ext)
    rates = {name: 0.0 for name in IRROTATIONAL_NAMES + VORTICITY_NAMES}
    rates.update({
        "T4": -0.5 * m["bQx2"],
        "T6": -m["bQ"] + 0.5 * t * m["bQx2"],
        "T7": (0.5 * h + 1.75 * g * t**2) * m["bQx2"] - 7.0 * g * t * m["bQ"],
        "T8": -0.5 * m["bxQx2"],
        "vT4": -0.5 * m["bQx2"],
        "vT6": -m["bQ"] + 0.5 * t * m["bQx2"],
        "vT8": -0.5 * m["bxQx2"] + omega * h * m["bQ"],
    })
    eta_x = spectral_derivative(state.eta.samples, state.grid)
    rates[TENSION_RATE_NAME] = -5.0 * integrate_samples(tension_excess(eta_x, params.sigma), state.grid)
    return rates


def measure_densities(
    snap: Snapshot,
    params: PhysicalParams,
    ext: Optional[HarmonicExtension] = None,
    include_vorticity: bool = False,
) -> DensitySample:
    """Full density sample of one snapshot: both tables, ℋ, scales and bottom-flux rates."""
    state = snap.state
    irrotational = irrotational_integrands(state, snap.eta_t, params)
    integrands = dict(irrotational)
    if include_vorticity:
        integrands.update(vorticity_integrands(state, snap.eta_t, params))
    values = _integrate_all(integrands, state.grid)
    scales = _scales(integrands, state.grid)
    energy = hamiltonian(state, snap.gq, params)
    scales[HAMILTONIAN_NAME] = scales["T2"]
    return DensitySample(
        t=state.t,
        irrotational={name: values[name] for name in IRROTATIONAL_NAMES},
        vorticity={name: values[name] for name in VORTICITY_NAMES if name in values},
        hamiltonian=energy,
        scales=scales,
        rates=bottom_flux_rates(state, ext, params) if ext is not None else {},
    )
