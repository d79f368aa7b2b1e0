from typing import Tuple

import numpy as np
from scipy.special import roots_legendre

from src.bulk.extension import eval_potential
from src.tools.errors import ErrorMessages
from src.types.bulk import BulkIntegrals, HarmonicExtension
from src.types.grid import RealField
from src.types.params import PhysicalParams

DEFAULT_BULK_NODES = 32


def physical_velocities(ext: HarmonicExtension, omega: float, x, z) -> Tuple[np.ndarray, np.ndarray]:
    """(u, v) = (φ_x − ωz, φ_z) for the pseudo-potential φ."""
    sample = eval_potential(ext, x, z)
    return sample.phi_x - omega * sample.z, sample.phi_z


def bulk_pressure_irrotational(
    ext_prev: HarmonicExtension,
    ext_now: HarmonicExtension,
    ext_next: HarmonicExtension,
    dt: float,
    params: PhysicalParams,
    x,
    z,
) -> np.ndarray:
    """p/ρ = −φ_t − ½|∇φ|² − gz, with φ_t from centered differences of the stored extensions."""
    if not params.irrotational:
        raise ValueError(ErrorMessages.PRESSURE_REQUIRES_IRROTATIONAL.format(omega=params.omega))
    now = eval_potential(ext_now, x, z)
    phi_t = (eval_potential(ext_next, x, z).phi - eval_potential(ext_prev, x, z).phi) / (2.0 * dt)
    return -phi_t - 0.5 * (now.phi_x**2 + now.phi_z**2) - params.g * now.z


def column_quadrature(eta: RealField, h: float, nz: int = DEFAULT_BULK_NODES):
    """Gauss–Legendre nodes mapped to (−h, η_j) per column; weights include Δx.

    Returns flattened (x, z, w) arrays of length n·nz.
    """
    if nz < 8:
        raise ValueError(f"nz must be at least 8, got {nz}")
    roots, weights = roots_legendre(nz)
    column = eta.samples + h
    x = np.repeat(eta.grid.nodes, nz)
    z = (-h + np.outer(column, (roots + 1.0) / 2.0)).ravel()
    w = (np.outer(column, weights / 2.0) * eta.grid.dx).ravel()
    return x, z, w


def bulk_integrals(
    ext: HarmonicExtension,
    eta: RealField,
    params: PhysicalParams,
    nz: int = DEFAULT_BULK_NODES,
) -> BulkIntegrals:
    x, z, w = column_quadrature(eta, params.h, nz)
    sample = eval_potential(ext, x, z)
    omega = params.omega
    u = sample.phi_x - omega * z
    v = sample.phi_z
    v_x = sample.phi_xz
    u_z = sample.phi_xz - omega
    integrands = (
        u,
        0.5 * (u**2 + v**2) + params.g * z,
        np.ones_like(z),
        v,
        x,
        z,
        v_x - u_z,
        x * v - z * u,
    )
    return BulkIntegrals(
        values=tuple(float(np.dot(w, f)) for f in integrands),
        scales=tuple(float(np.dot(w, np.abs(f))) for f in integrands),
    )


def volume_integrals(
    ext: HarmonicExtension,
    eta: RealField,
    params: PhysicalParams,
    nz: int = DEFAULT_BULK_NODES,
) -> Tuple[float, ...]:
    """Bulk counterparts of the contour integrals I1..I8 (Green's theorem, same orientation)."""
    x, z, w = column_quadrature(eta, params.h, nz)
    s = eval_potential(ext, x, z)
    integrands = (
        s.phi_x,
        0.5 * (s.phi_x**2 + s.phi_z**2) + params.g * z,
        np.ones_like(z),
        s.phi_z,
        x,
        z,
        x * s.phi_x + z * s.phi_z + 2.0 * s.phi,
        x * s.phi_z - z * s.phi_x,
    )
    return tuple(float(np.dot(w, f)) for f in integrands)


def surface_pressure(
    ext_prev: HarmonicExtension,
    ext_now: HarmonicExtension,
    ext_next: HarmonicExtension,
    eta: RealField,
    dt: float,
    params: PhysicalParams,
) -> float:
    """max |p/ρ| on z = η; zero for exact solutions of the dynamic condition."""
    pressure = bulk_pressure_irrotational(ext_prev, ext_now, ext_next, dt, params, eta.grid.nodes, eta.samples)
    return float(np.max(np.abs(pressure)))
