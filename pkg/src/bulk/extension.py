"""Harmonic extension of surface traces into the fluid bulk.

The fit is a collocation problem: the vertical profiles are fixed, so requiring
φ(x_j, η_j) = q_j at the grid nodes is linear in the real unknowns
[c_0, Re c_1, Im c_1, ..., Re c_{n/2-1}, Im c_{n/2-1}, c_{n/2}].
"""
from typing import Tuple

import numpy as np
from loguru import logger
from scipy import linalg

from src.spectral.grid import wavenumbers
from src.tools.errors import ErrorMessages, ExtensionFitError
from src.types.bulk import BulkSample, HarmonicExtension
from src.types.grid import RealField, require_same_grid

DEFAULT_FIT_TOLERANCE = 1e-10
DEFAULT_FIT_MAX_ITER = 5
GROWTH_LIMIT = 1e8


def vertical_profiles(k: np.ndarray, z: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """cosh(k(z+h))/cosh(kh) and sinh(k(z+h))/cosh(kh), broadcast as z[..., None] × k."""
    z = np.asarray(z, dtype=np.float64)[..., None]
    lift = np.exp(-2.0 * k * (z + h))
    norm = 1.0 + np.exp(-2.0 * k * h)
    growth = np.exp(k * z)
    return growth * (1.0 + lift) / norm, growth * (1.0 - lift) / norm


def _collocation_matrix(k: np.ndarray, xi: np.ndarray, eta: np.ndarray, h: float) -> np.ndarray:
    n = xi.size
    cosh_profile, _ = vertical_profiles(k, eta, h)
    phase = np.outer(xi, k)
    matrix = np.empty((n, n))
    matrix[:, 0] = cosh_profile[:, 0]
    for m in range(1, n // 2):
        matrix[:, 2 * m - 1] = np.cos(phase[:, m]) * cosh_profile[:, m]
        matrix[:, 2 * m] = -np.sin(phase[:, m]) * cosh_profile[:, m]
    matrix[:, n - 1] = np.cos(phase[:, n // 2]) * cosh_profile[:, n // 2]
    return matrix


def _unpack(unknowns: np.ndarray) -> np.ndarray:
    n = unknowns.size
    coeffs = np.zeros(n // 2 + 1, dtype=np.complex128)
    coeffs[0] = unknowns[0]
    coeffs[1:n // 2] = unknowns[1:n - 1:2] + 1j * unknowns[2:n - 1:2]
    coeffs[n // 2] = unknowns[n - 1]
    return coeffs


def amplification(k: np.ndarray, peak: float, h: float) -> float:
    """max_m cosh(k_m(peak+h))/cosh(k_m h)"""
    cosh_profile, _ = vertical_profiles(k, np.array(peak), h)
    return float(np.max(cosh_profile))


def fit_extension(
    eta: RealField,
    q: RealField,
    h: float,
    tol: float = DEFAULT_FIT_TOLERANCE,
    max_iter: int = DEFAULT_FIT_MAX_ITER,
) -> HarmonicExtension:
    grid = require_same_grid(eta, q)
    peak = eta.max_abs()
    if peak >= h:
        raise ValueError(ErrorMessages.SURFACE_BELOW_BOTTOM.format(peak=peak, depth=h))

    k = wavenumbers(grid)
    steepness = float(k[-1] * peak)
    if steepness > 1.0:
        logger.warning(f"Surface is steep for the resolved modes: max|k·eta| = {steepness:.3f}")
    growth = amplification(k, float(np.max(eta.samples)), h)
    if growth > GROWTH_LIMIT:
        raise ExtensionFitError(ErrorMessages.EXTENSION_ILL_CONDITIONED.format(growth=growth, limit=GROWTH_LIMIT))

    xi = grid.nodes - grid.x_min
    matrix = _collocation_matrix(k, xi, eta.samples, h)
    factors = linalg.lu_factor(matrix)
    target = q.samples
    limit = tol * max(1.0, q.max_abs())

    # 迭代修正
    unknowns = np.zeros(grid.n_points)
    residual = target.copy()
    error = float(np.max(np.abs(residual)))
    for _ in range(max_iter):
        if error <= limit:
            break
        unknowns += linalg.lu_solve(factors, residual)
        residual = target - matrix @ unknowns
        error = float(np.max(np.abs(residual)))
    if error > limit:
        logger.error(f"Harmonic extension failed to converge: residual {error:.3e} > {limit:.3e}")
        raise ExtensionFitError(
            ErrorMessages.EXTENSION_NOT_CONVERGED.format(iterations=max_iter, residual=error), residual=error
        )
    return HarmonicExtension(grid=grid, depth=h, coefficients=_unpack(unknowns), residual=error)


def eval_potential(ext: HarmonicExtension, x, z) -> BulkSample:
    """φ and its derivatives at arbitrary points (z ≥ −h), termwise from the series."""
    x, z = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(z, dtype=np.float64))
    shape = x.shape
    xs, zs = x.ravel(), z.ravel()

    k = wavenumbers(ext.grid)
    phase = np.exp(1j * np.outer(xs - ext.grid.x_min, k))
    modes = phase * ext.coefficients
    real_part = modes.real
    slope_part = (1j * k * modes).real
    cosh_profile, sinh_profile = vertical_profiles(k, zs, ext.depth)

    def total(terms: np.ndarray) -> np.ndarray:
        return np.sum(terms, axis=-1).reshape(shape)

    phi_xx = -total(k**2 * real_part * cosh_profile)
    return BulkSample(
        x=x,
        z=z,
        phi=total(real_part * cosh_profile),
        phi_x=total(slope_part * cosh_profile),
        phi_z=total(k * real_part * sinh_profile),
        phi_xx=phi_xx,
        phi_xz=total(k * slope_part * sinh_profile),
        phi_zz=-phi_xx,
        phi_zzz=total(k**3 * real_part * sinh_profile),
    )


def bottom_trace(ext: HarmonicExtension) -> RealField:
    """Q(x) = φ(x, −h) on the grid nodes."""
    grid = ext.grid
    sample = eval_potential(ext, grid.nodes, np.full(grid.n_points, -ext.depth))
    return RealField(grid=grid, samples=sample.phi)


def zero_extension(eta: RealField, h: float) -> HarmonicExtension:
    return HarmonicExtension(grid=eta.grid, depth=h, coefficients=np.zeros(eta.grid.n_modes))
