"""Contour integrals I1..I8 around the fluid column and their bulk counterparts.

Orientation: the surface is traversed in +x and the bottom in −x, so ∮ z dx is the
(positive) area; by Green's theorem ∮ P dx + Q dz = ∬ (P_z − Q_x) dA in this orientation.
Lateral sides are dropped; the edge guard keeps the data away from them.
"""
from typing import List, Tuple

import numpy as np

from src.bulk.extension import bottom_trace, eval_potential
from src.bulk.field import DEFAULT_BULK_NODES, volume_integrals
from src.spectral.grid import integrate_samples, spectral_derivative
from src.types.bulk import CONTOUR_NAMES, HarmonicExtension
from src.types.ledger import IdentityResidual
from src.types.params import PhysicalParams
from src.types.state import SurfaceState


def contour_integrals(state: SurfaceState, ext: HarmonicExtension, params: PhysicalParams) -> Tuple[float, ...]:
    grid = state.grid
    g, h, L = params.g, params.h, grid.length
    x, eta, q = grid.nodes, state.eta.samples, state.q.samples
    eta_x = spectral_derivative(eta, grid)
    Q = bottom_trace(ext).samples

    top = eval_potential(ext, x, eta)
    gq = top.phi_z - eta_x * top.phi_x

    def surf(values: np.ndarray) -> float:
        return integrate_samples(values, grid)

    return (
        -surf(q * eta_x),
        0.5 * surf(q * gq) + 0.5 * g * surf(eta * eta) - 0.5 * g * h * h * L,
        surf(eta) + h * L,
        surf(q) - surf(Q),
        surf(x * eta) + h * surf(x),
        0.5 * surf(eta * eta) - 0.5 * h * h * L,
        surf(q * (eta - x * eta_x)) + h * surf(Q),
        surf(q * (x + eta * eta_x)) - surf(x * Q),
    )


def contour_residuals(
    state: SurfaceState,
    ext: HarmonicExtension,
    params: PhysicalParams,
    nz: int = DEFAULT_BULK_NODES,
) -> List[IdentityResidual]:
    """contour_I1..I8: |I_j − ∬(Green integrand)_j| / max(1, |I_j|)."""
    contour = contour_integrals(state, ext, params)
    volume = volume_integrals(ext, state.eta, params, nz)
    out = []
    for name, line, area in zip(CONTOUR_NAMES, contour, volume):
        scale = max(1.0, abs(line))
        out.append(IdentityResidual(
            identity=f"contour_{name}",
            degree=0,
            residual=abs(line - area) / scale,
            scale=scale,
            t=state.t,
        ))
    return out
