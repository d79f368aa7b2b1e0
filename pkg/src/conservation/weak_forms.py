"""Weak-form ledgers A, B for the harmonic test functions and their evolution identities.

Surface integrals use n ds = (−η_x, 1) dx on z = η; the bottom uses n ds = (0, −1) dx on z = −h.
Complex quantities are carried as (Re, Im) pairs in the ledgers.
"""
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.bulk.extension import bottom_trace
from src.bulk.field import bulk_pressure_irrotational
from src.evolution.rhs import curvature_samples
from src.spectral.grid import anchored_antiderivative_samples, integrate_samples, spectral_derivative
from src.spectral.harmonic import HarmonicTestFunction
from src.tools.errors import ErrorMessages, SeriesError
from src.types.bulk import HarmonicExtension
from src.types.grid import RealField
from src.types.ledger import IdentityResidual, WeakFormLedger
from src.types.params import PhysicalParams
from src.types.state import SurfaceState


def _pair(value: complex) -> tuple:
    return float(np.real(value)), float(np.imag(value))


def _complex(pair) -> complex:
    return complex(pair[0], pair[1])


def _contour(values: np.ndarray, grid) -> complex:
    return complex(integrate_samples(values.real, grid), integrate_samples(values.imag, grid))


def _variant(params: PhysicalParams, variant: Optional[str]) -> str:
    return variant or ("irrotational" if params.irrotational else "vorticity")


def weak_form_AB(
    state: SurfaceState,
    ext: HarmonicExtension,
    n: int,
    params: PhysicalParams,
    eta_t: Optional[RealField] = None,
    variant: Optional[str] = None,
) -> WeakFormLedger:
    """A, B and dA/dt for test degree n; with eta_t the local terms of dB/dt are added.

    The irrotational dB/dt also needs the bottom pressure, which depends on neighbouring
    snapshots; ``weak_residual_B`` adds it. For the vorticity variant rhs_B is complete here.
    """
    grid = state.grid
    tf = HarmonicTestFunction(degree=n)
    x, eta, q = grid.nodes, state.eta.samples, state.q.samples
    eta_x = spectral_derivative(eta, grid)
    bottom = np.full_like(x, -params.h)
    Q = bottom_trace(ext).samples

    phi_x, phi_z = tf.eval_gradient(x, eta)
    _, phi_xz, phi_zz = tf.eval_hessian(x, eta)
    _, bed_z = tf.eval_gradient(x, bottom)
    _, _, bed_zz = tf.eval_hessian(x, bottom)
    variant = _variant(params, variant)

    terms: Dict[str, tuple] = {}
    if variant == "irrotational":
        flux = eta_x * phi_x + phi_z
        A = _contour(tf.eval_z_antiderivative(x, eta), grid)
        B = _contour(-q * flux, grid) + _contour(Q * bed_z, grid)
        rhs_A = B + 2.0 * _contour(q * phi_z, grid) - 2.0 * _contour(Q * bed_z, grid)
        rhs_B = None
        if eta_t is not None:
            terms["gravity"] = _pair(params.g * _contour(eta * flux, grid))
            terms["kinematic"] = _pair(-2.0 * _contour(q * eta_t.samples * phi_zz, grid))
            if params.sigma > 0.0:
                kappa = curvature_samples(eta, grid)
                terms["tension"] = _pair(-params.sigma * _contour(kappa * flux, grid))
            rhs_B = _pair(sum(_complex(v) for v in terms.values()))
    else:
        # ψ = ∂_zφₙ, so ψ_x = φ_xz, ψ_z = φ_zz and ψ_zz = φ_zzz
        psi_x, psi_z = phi_xz, phi_zz
        _, _, psi_zz = tf.eval_z_derivatives(x, eta)
        flux = eta_x * psi_x + psi_z
        A = _contour(tf.eval(x, eta) - tf.eval(x, np.zeros_like(x)), grid)
        B = _contour(-q * flux, grid)
        rhs_A = (
            _contour(params.omega * eta * eta_x * phi_z, grid)
            + _contour(q * (-eta_x * phi_xz + phi_zz), grid)
            - _contour(Q * bed_zz, grid)
        )
        rhs_B = None
        if eta_t is not None:
            et = eta_t.samples
            omega = params.omega
            q_x = spectral_derivative(q, grid)
            Q_x = spectral_derivative(Q, grid)
            drift = anchored_antiderivative_samples(et, grid)
            terms["gravity"] = _pair(params.g * _contour(eta * flux, grid))
            terms["shear_advection"] = _pair(-omega * _contour(eta * q_x * psi_z, grid))
            terms["shear_potential"] = _pair(0.5 * omega**2 * _contour(eta * eta * flux, grid))
            terms["shear_drift"] = _pair(-omega * _contour(drift * flux, grid))
            terms["kinematic"] = _pair(-2.0 * _contour(q * et * psi_zz, grid))
            terms["bottom"] = _pair(0.5 * _contour(Q_x * Q_x * bed_zz, grid))
            if params.sigma > 0.0:
                kappa = curvature_samples(eta, grid)
                terms["tension"] = _pair(-params.sigma * _contour(kappa * flux, grid))
            rhs_B = _pair(sum(_complex(v) for v in terms.values()))

    return WeakFormLedger(
        t=state.t,
        degree=n,
        variant=variant,
        A=_pair(A),
        B=_pair(B),
        rhs_A=_pair(rhs_A),
        rhs_B=rhs_B,
        terms=terms,
    )


def observer_spacing(times: Sequence[float], what: str = "ledger series") -> float:
    """Uniform spacing of a series with at least three samples."""
    if len(times) < 3:
        raise SeriesError(ErrorMessages.SERIES_TOO_SHORT.format(what=what, required=3, count=len(times)))
    steps = np.diff(np.asarray(times, dtype=np.float64))
    dt = float(np.mean(steps))
    deviation = float(np.max(np.abs(steps - dt)))
    if dt <= 0 or deviation > 1e-9 * max(1.0, abs(dt)):
        raise SeriesError(ErrorMessages.SERIES_NOT_UNIFORM.format(what=what, deviation=deviation))
    return dt


def _check_degrees(series: Sequence[WeakFormLedger], n: int) -> None:
    for ledger in series:
        if ledger.degree != n:
            raise SeriesError(ErrorMessages.SERIES_DEGREE_MISMATCH.format(expected=n, found=ledger.degree))


def _centered_residual(
    series: Sequence[WeakFormLedger],
    values: List[complex],
    rates: List[Optional[complex]],
    dt: float,
    identity: str,
    n: int,
) -> IdentityResidual:
    worst, worst_scale, worst_t = 0.0, 1.0, series[1].t
    for i in range(1, len(series) - 1):
        derivative = (values[i + 1] - values[i - 1]) / (2.0 * dt)
        scale = max(1.0, abs(_complex(series[i].B)), abs(_complex(series[i].A)) / dt)
        residual = abs(derivative - rates[i]) / scale
        if residual > worst:
            worst, worst_scale, worst_t = residual, scale, series[i].t
    return IdentityResidual(identity=identity, degree=n, residual=worst, scale=worst_scale, t=worst_t)


def weak_residual_A(ledger_series: Sequence[WeakFormLedger], n: int) -> IdentityResidual:
    """max over interior samples of |dA/dt − rhs_A| / max(1, |B|, |A|/Δt), centered differences."""
    dt = observer_spacing([ledger.t for ledger in ledger_series])
    _check_degrees(ledger_series, n)
    identity = "weakA" if ledger_series[0].variant == "irrotational" else "vort_weakA"
    return _centered_residual(
        ledger_series,
        [_complex(ledger.A) for ledger in ledger_series],
        [_complex(ledger.rhs_A) for ledger in ledger_series],
        dt,
        identity,
        n,
    )


def bottom_pressure_term(
    ext_prev: HarmonicExtension,
    ext_now: HarmonicExtension,
    ext_next: HarmonicExtension,
    dt: float,
    n: int,
    params: PhysicalParams,
) -> complex:
    """−∮(p_B/ρ − gh) φₙ,z(x, −h) dx with the bed pressure from the bulk Bernoulli relation."""
    grid = ext_now.grid
    x = grid.nodes
    bottom = np.full_like(x, -params.h)
    pressure = bulk_pressure_irrotational(ext_prev, ext_now, ext_next, dt, params, x, bottom)
    _, bed_z = HarmonicTestFunction(degree=n).eval_gradient(x, bottom)
    return -_contour((pressure - params.g * params.h) * bed_z, grid)


def weak_residual_B(
    ledger_series: Sequence[WeakFormLedger],
    state_series: Sequence[SurfaceState],
    ext_series: Sequence[HarmonicExtension],
    n: int,
    params: PhysicalParams,
) -> IdentityResidual:
    """As weak_residual_A for B; ledgers must have been built with eta_t."""
    dt = observer_spacing([ledger.t for ledger in ledger_series])
    _check_degrees(ledger_series, n)
    if not len(ledger_series) == len(state_series) == len(ext_series):
        raise SeriesError(ErrorMessages.SERIES_TOO_SHORT.format(
            what="state/extension series", required=len(ledger_series), count=min(len(state_series), len(ext_series))
        ))
    if any(ledger.rhs_B is None for ledger in ledger_series):
        raise ValueError("weak_residual_B needs ledgers built with eta_t")

    variant = ledger_series[0].variant
    rates: List[Optional[complex]] = [None] * len(ledger_series)
    for i in range(1, len(ledger_series) - 1):
        rate = _complex(ledger_series[i].rhs_B)
        if variant == "irrotational":
            rate += bottom_pressure_term(ext_series[i - 1], ext_series[i], ext_series[i + 1], dt, n, params)
        rates[i] = rate
    identity = "weakB" if variant == "irrotational" else "vort_weakB"
    return _centered_residual(
        ledger_series,
        [_complex(ledger.B) for ledger in ledger_series],
        rates,
        dt,
        identity,
        n,
    )


RATIO_FLOOR = 1e-12


def halving_ratio(
    ledger_series: Sequence[WeakFormLedger],
    n: int,
    params: PhysicalParams,
    state_series: Optional[Sequence[SurfaceState]] = None,
    ext_series: Optional[Sequence[HarmonicExtension]] = None,
) -> Optional[float]:
    """Error at twice the observer spacing over the error at the spacing (4 for an O(Δt²) identity).

    The error is the worst residual times its normalization, so the |A|/Δt scale does not enter.
    Uses B when the state and extension series are given, A otherwise. The coarse series is every
    other sample of the fine one. None with fewer than five samples or a fine error at roundoff.
    """
    if len(ledger_series) < 5:
        return None

    def error(stride: int) -> float:
        ledgers = ledger_series[::stride]
        if state_series is None:
            found = weak_residual_A(ledgers, n)
        else:
            found = weak_residual_B(ledgers, state_series[::stride], ext_series[::stride], n, params)
        return found.residual * found.scale

    fine = error(1)
    if fine <= RATIO_FLOOR:
        return None
    return error(2) / fine
