"""Dirichlet–Neumann operator by its Taylor-series expansion about the flat surface η = 0.

With P_j = η^j/j! and the flat-bottom multipliers

    S_j = k^j        (j even)    k^j tanh(kh)    (j odd)
    Ψ_j = i k^j tanh(kh) (j even)    i k^j       (j odd)

the surface amplitude a = Σ a_m solves a_0 = q, a_m = −Σ_{j=1..m} P_j S_j[a_{m−j}], and the
order-m term is G_m q = −∂x Σ_{j=0..m} P_j Ψ_j[a_{m−j}]. Every term is an exact x-derivative,
so mean(Gq) = 0 at every truncation order.
"""
import numpy as np

from src.spectral.grid import apply_symbol, spectral_dealias, spectral_derivative, wavenumbers
from src.tools.errors import ErrorMessages
from src.types.grid import PeriodicGrid, RealField, require_same_grid

MAX_DNO_ORDER = 8


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_DNO_ORDER:
        raise ValueError(ErrorMessages.DNO_ORDER_INVALID.format(order=order))


def flat_symbol(grid: PeriodicGrid, h: float) -> np.ndarray:
    k = wavenumbers(grid)
    return k * np.tanh(k * h)


def dno_samples(
    eta: np.ndarray,
    q: np.ndarray,
    grid: PeriodicGrid,
    h: float,
    order: int = 4,
    dealias: bool = True,
) -> np.ndarray:
    _check_order(order)
    k = wavenumbers(grid)
    tanh_kh = np.tanh(k * h)

    def product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = a * b
        return spectral_dealias(out, grid) if dealias else out

    def symbol_s(j: int) -> np.ndarray:
        return k**j * (tanh_kh if j % 2 else 1.0)

    def symbol_psi(j: int) -> np.ndarray:
        return 1j * k**j * (1.0 if j % 2 else tanh_kh)

    weights = [np.ones_like(eta)]
    for j in range(1, order + 1):
        weights.append(product(weights[-1], eta) / j if j > 1 else eta.copy())

    amplitudes = [q]
    for m in range(1, order + 1):
        term = np.zeros_like(q)
        for j in range(1, m + 1):
            term -= product(weights[j], apply_symbol(amplitudes[m - j], symbol_s(j)))
        amplitudes.append(term)

    # Σ_m Σ_j P_j Ψ_j[a_{m−j}] = Σ_j P_j Ψ_j[a_0 + ... + a_{order−j}]
    partial = np.cumsum(np.array(amplitudes), axis=0)
    flux = np.zeros_like(q)
    for j in range(order + 1):
        lifted = apply_symbol(partial[order - j], symbol_psi(j), odd=True)
        flux += lifted if j == 0 else product(weights[j], lifted)
    return -spectral_derivative(flux, grid, 1)


def dno_apply(eta: RealField, q: RealField, h: float, order: int = 4, dealias: bool = True) -> RealField:
    """G(η)q ≡ (φ_z − η_xφ_x)|_{z=η} truncated at the given order."""
    grid = require_same_grid(eta, q)
    peak = eta.max_abs()
    if peak >= h:
        raise ValueError(ErrorMessages.SURFACE_BELOW_BOTTOM.format(peak=peak, depth=h))
    return q.like(dno_samples(eta.samples, q.samples, grid, h, order, dealias))
