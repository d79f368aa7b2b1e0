"""Fourier-spectral substrate on a uniform periodic grid.

FFT normalization: scipy.fft.rfft is unnormalized, irfft carries the 1/n factor.
With that convention ``sum(f**2) * dx == (L / n**2) * sum(|fft(f)|**2)`` (see ``parseval_energy``).
"""
from functools import lru_cache

import numpy as np
import scipy.fft as fft

from src.tools.errors import ErrorMessages, MeanViolationError
from src.types.grid import PeriodicGrid, RealField

DEFAULT_MEAN_TOLERANCE = 1e-10


def make_grid(n_points: int, length: float, x_min: float = 0.0) -> PeriodicGrid:
    return PeriodicGrid(n_points=n_points, length=length, x_min=x_min)


@lru_cache(maxsize=64)
def _wavenumbers(n_points: int, length: float) -> np.ndarray:
    k = 2.0 * np.pi * np.arange(n_points // 2 + 1) / length
    k.setflags(write=False)
    return k


def wavenumbers(grid: PeriodicGrid) -> np.ndarray:
    """非负波数 k_m = 2πm/L, m = 0..n/2 (rfft 排列)"""
    return _wavenumbers(grid.n_points, grid.length)


def dealias_cutoff(grid: PeriodicGrid) -> int:
    return grid.n_points // 3


# --- array-level kernels, shared by the evolution and audit modules ---

def apply_symbol(samples: np.ndarray, symbol: np.ndarray, odd: bool = False) -> np.ndarray:
    """Fourier multiplier; odd (imaginary) symbols lose the Nyquist mode."""
    n = samples.shape[-1]
    coeffs = fft.rfft(samples) * symbol
    if odd and n % 2 == 0:
        coeffs[..., -1] = 0.0
    return fft.irfft(coeffs, n=n)


def spectral_derivative(samples: np.ndarray, grid: PeriodicGrid, order: int = 1) -> np.ndarray:
    if order not in (1, 2, 3):
        raise ValueError(ErrorMessages.DERIVATIVE_ORDER_INVALID.format(order=order))
    k = wavenumbers(grid)
    return apply_symbol(samples, (1j * k) ** order, odd=order % 2 == 1)


def spectral_dealias(samples: np.ndarray, grid: PeriodicGrid) -> np.ndarray:
    coeffs = fft.rfft(samples)
    coeffs[dealias_cutoff(grid) + 1:] = 0.0
    return fft.irfft(coeffs, n=grid.n_points)


def check_zero_mean(samples: np.ndarray, tolerance: float = DEFAULT_MEAN_TOLERANCE) -> None:
    mean = float(np.mean(samples))
    limit = tolerance * float(np.max(np.abs(samples))) if samples.size else 0.0
    if abs(mean) > limit and mean != 0.0:
        raise MeanViolationError(mean=mean, limit=limit)


def spectral_antiderivative(samples: np.ndarray, grid: PeriodicGrid, tolerance: float = DEFAULT_MEAN_TOLERANCE) -> np.ndarray:
    check_zero_mean(samples, tolerance)
    k = wavenumbers(grid)
    coeffs = fft.rfft(samples)
    out = np.zeros_like(coeffs)
    out[1:] = coeffs[1:] / (1j * k[1:])
    if grid.n_points % 2 == 0:
        out[-1] = 0.0
    return fft.irfft(out, n=grid.n_points)


def anchored_antiderivative_samples(samples: np.ndarray, grid: PeriodicGrid, tolerance: float = DEFAULT_MEAN_TOLERANCE) -> np.ndarray:
    """Antiderivative vanishing at x_min: the whole-line decaying branch for localized data."""
    primitive = spectral_antiderivative(samples, grid, tolerance)
    return primitive - primitive[0]


# --- RealField operations ---

def derivative(f: RealField, order: int = 1) -> RealField:
    return f.like(spectral_derivative(f.samples, f.grid, order))


def antiderivative(f: RealField, mean_tolerance: float = DEFAULT_MEAN_TOLERANCE) -> RealField:
    """Zero-mean periodic antiderivative."""
    return f.like(spectral_antiderivative(f.samples, f.grid, mean_tolerance))


def anchored_antiderivative(f: RealField, mean_tolerance: float = DEFAULT_MEAN_TOLERANCE) -> RealField:
    return f.like(anchored_antiderivative_samples(f.samples, f.grid, mean_tolerance))


def dealias(f: RealField) -> RealField:
    return f.like(spectral_dealias(f.samples, f.grid))


def integrate(f: RealField) -> float:
    return integrate_samples(f.samples, f.grid)


def integrate_samples(samples: np.ndarray, grid: PeriodicGrid) -> float:
    # 周期函数的梯形公式即谱精度
    return float(np.sum(samples) * grid.dx)


def x_field(grid: PeriodicGrid) -> RealField:
    return RealField(grid=grid, samples=grid.nodes)


def parseval_energy(f: RealField) -> float:
    """(L/n²)·Σ|F_m|² over the full spectrum, folded onto the rfft half."""
    n = f.grid.n_points
    power = np.abs(fft.rfft(f.samples)) ** 2
    folded = power[0] + 2.0 * np.sum(power[1:-1]) + power[-1]
    return float(f.grid.length * folded / n**2)
