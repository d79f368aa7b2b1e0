"""Vanishing contour integrals built from the flow gradient and a harmonic test function.

For U + iV = f(φ_x + iφ_z) with f(w) = wᵐ/m, the pair (U, V) obeys U_x = −V_z, U_z = V_x, so

    ∮ [U ∇ψ_z + V ∇ψ_x] · n ds = 0

for every harmonic ψ. m = 1, 2, 3 give the identities idA, idB and third_order; ψ = xz gives xz_case.
"""
from typing import Union

import numpy as np

from src.bulk.extension import eval_potential
from src.spectral.grid import integrate_samples, spectral_derivative
from src.spectral.harmonic import HarmonicTestFunction, XZTestFunction
from src.tools.errors import ErrorMessages
from src.types.bulk import HarmonicExtension
from src.types.ledger import IdentityResidual
from src.types.state import SurfaceState

IDENTITY_BY_DEGREE = {1: "idA", 2: "idB", 3: "third_order"}

TestDegree = Union[int, str]


def _test_function(n: TestDegree):
    if n == "xz":
        return XZTestFunction()
    return HarmonicTestFunction(degree=n)


def _flow_power(phi_x: np.ndarray, phi_z: np.ndarray, f_degree: int) -> np.ndarray:
    w = phi_x + 1j * phi_z
    return w**f_degree / f_degree


def _total(values: np.ndarray, grid) -> complex:
    return complex(integrate_samples(values.real, grid), integrate_samples(values.imag, grid))


def _integrands(U: np.ndarray, V: np.ndarray, hessian, eta_x=None):
    psi_xx, psi_xz, psi_zz = hessian
    if eta_x is None:
        return -(U * psi_zz + V * psi_xz)
    return U * (-eta_x * psi_xz + psi_zz) + V * (-eta_x * psi_xx + psi_xz)


def green_identity_residuals(
    ext: HarmonicExtension,
    state: SurfaceState,
    f_degree: int,
    n: TestDegree,
) -> IdentityResidual:
    """|∮ surface + bottom| / ∮|integrand|; a vanishing integrand reports residual 0 with scale 1."""
    if f_degree not in IDENTITY_BY_DEGREE:
        raise ValueError(ErrorMessages.GREEN_DEGREE_INVALID.format(degree=f_degree))
    tf = _test_function(n)
    grid = state.grid
    x, eta = grid.nodes, state.eta.samples
    bottom = np.full_like(x, -ext.depth)
    eta_x = spectral_derivative(eta, grid)

    top = eval_potential(ext, x, eta)
    bed = eval_potential(ext, x, bottom)
    # U + iV = f(w) is complex-valued; U and V are its real and imaginary parts
    top_f = _flow_power(top.phi_x, top.phi_z, f_degree)
    bed_f = _flow_power(bed.phi_x, bed.phi_z, f_degree)

    surface = _integrands(top_f.real, top_f.imag, tf.eval_hessian(x, eta), eta_x)
    floor = _integrands(bed_f.real, bed_f.imag, tf.eval_hessian(x, bottom))

    total = _total(surface, grid) + _total(floor, grid)
    scale = integrate_samples(np.abs(surface), grid) + integrate_samples(np.abs(floor), grid)
    identity = "xz_case" if n == "xz" else IDENTITY_BY_DEGREE[f_degree]
    if scale == 0.0:
        return IdentityResidual(identity=identity, degree=tf.degree, residual=0.0, scale=1.0, t=state.t)
    return IdentityResidual(identity=identity, degree=tf.degree, residual=abs(total) / scale, scale=scale, t=state.t)
