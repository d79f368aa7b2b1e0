from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from loguru import logger

from src.evolution.rhs import SurfaceRates, surface_rates
from src.tools.errors import ErrorMessages, MeanViolationError, NonFiniteStateError, NumericalFailure
from src.types.grid import PeriodicGrid, RealField
from src.types.params import PhysicalParams
from src.types.state import SolverConfig, Snapshot, SurfaceState

StateRhs = Callable[[SurfaceState, PhysicalParams, SolverConfig], Tuple[RealField, RealField]]
RhsSelector = Union[str, StateRhs, None]
ArrayRhs = Callable[[np.ndarray, np.ndarray, PeriodicGrid, PhysicalParams, SolverConfig, float], SurfaceRates]

MEAN_TOLERANCE = 1e-10


def resolve_rhs(selector: RhsSelector, params: PhysicalParams) -> ArrayRhs:
    """Map a selector (irrotational, vorticity, a state-level callable, or None for auto) to an array kernel."""
    if selector is None:
        selector = "irrotational" if params.irrotational else "vorticity"
    if selector == "irrotational":
        if not params.irrotational:
            raise ValueError(ErrorMessages.RHS_REQUIRES_IRROTATIONAL.format(omega=params.omega))

        def kernel(eta, q, grid, params, config, t):
            return surface_rates(eta, q, grid, params, config, shear=False, t=t)
        return kernel
    if selector == "vorticity":
        def kernel(eta, q, grid, params, config, t):
            return surface_rates(eta, q, grid, params, config, shear=True, t=t)
        return kernel
    if callable(selector):
        def kernel(eta, q, grid, params, config, t):
            state = SurfaceState(t=t, eta=RealField(grid=grid, samples=eta), q=RealField(grid=grid, samples=q))
            eta_t, q_t = selector(state, params, config)
            return SurfaceRates(eta_t=eta_t.samples, q_t=q_t.samples, gq=np.full(grid.n_points, np.nan))
        return kernel
    raise ValueError(ErrorMessages.RHS_SELECTOR_INVALID.format(selector=selector))


def _finite(*arrays: np.ndarray) -> bool:
    return all(bool(np.all(np.isfinite(a))) for a in arrays)


def _advance(
    kernel: ArrayRhs,
    t: float,
    eta: np.ndarray,
    q: np.ndarray,
    grid: PeriodicGrid,
    params: PhysicalParams,
    config: SolverConfig,
    dt: float,
) -> Tuple[np.ndarray, np.ndarray]:
    nodes = ((0.0, 0.0), (0.5, 0.5), (0.5, 0.5), (1.0, 1.0))
    slopes = []
    for stage, (shift, weight) in enumerate(nodes, start=1):
        if slopes:
            prev_eta_t, prev_q_t = slopes[-1]
            stage_eta = eta + weight * dt * prev_eta_t
            stage_q = q + weight * dt * prev_q_t
        else:
            stage_eta, stage_q = eta, q
        stage_t = t + shift * dt
        if not _finite(stage_eta, stage_q):
            raise NonFiniteStateError(stage=stage, t=stage_t)
        rates = kernel(stage_eta, stage_q, grid, params, config, stage_t)
        if not _finite(rates.eta_t, rates.q_t):
            raise NonFiniteStateError(stage=stage, t=stage_t)
        slopes.append((rates.eta_t, rates.q_t))

    (e1, q1), (e2, q2), (e3, q3), (e4, q4) = slopes
    new_eta = eta + dt / 6.0 * (e1 + 2.0 * e2 + 2.0 * e3 + e4)
    new_q = q + dt / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4)
    if not _finite(new_eta, new_q):
        raise NonFiniteStateError(stage=4, t=t + dt)
    return new_eta, new_q


def step_rk4(
    state: SurfaceState,
    params: PhysicalParams,
    config: SolverConfig,
    rhs_selector: RhsSelector = None,
    dt: Optional[float] = None,
) -> SurfaceState:
    """Classical RK4 by config.dt; ``dt`` overrides it (a negative value integrates backwards)."""
    dt = config.dt if dt is None else dt
    kernel = resolve_rhs(rhs_selector, params)
    eta, q = _advance(kernel, state.t, state.eta.samples, state.q.samples, state.grid, params, config, dt)
    check_surface(eta, params, state.t + dt)
    return SurfaceState(t=state.t + dt, eta=state.eta.like(eta), q=state.q.like(q))


def check_state_mean(state: SurfaceState) -> None:
    _check_mean(state.eta.samples)


def _check_mean(eta: np.ndarray) -> None:
    mean = float(np.mean(eta))
    limit = MEAN_TOLERANCE * max(1.0, float(np.max(np.abs(eta))))
    if abs(mean) > limit:
        raise MeanViolationError(mean=mean, limit=limit)


def check_surface(eta: np.ndarray, params: PhysicalParams, t: float) -> None:
    """Post-step invariants: max|η| < h, and zero mean when ω ≠ 0."""
    peak = float(np.max(np.abs(eta)))
    if peak >= params.h:
        raise NumericalFailure(ErrorMessages.SURFACE_BELOW_BOTTOM.format(peak=peak, depth=params.h), t=t)
    if not params.irrotational:
        try:
            _check_mean(eta)
        except MeanViolationError as e:
            e.t = t
            raise


def snapshot(
    step: int,
    state: SurfaceState,
    params: PhysicalParams,
    config: SolverConfig,
    rhs_selector: RhsSelector = None,
) -> Snapshot:
    """State plus the right-hand side evaluated at it; Gq is stored as zeros for custom callables."""
    kernel = resolve_rhs(rhs_selector, params)
    rates = kernel(state.eta.samples, state.q.samples, state.grid, params, config, state.t)
    if not _finite(rates.gq):
        rates = rates._replace(gq=np.zeros_like(rates.eta_t))
        logger.debug("Custom right-hand side: Gq not available, stored as zeros")
    return Snapshot(
        step=step,
        state=state,
        gq=state.eta.like(rates.gq),
        eta_t=state.eta.like(rates.eta_t),
        q_t=state.q.like(rates.q_t),
    )


def run(
    state0: SurfaceState,
    params: PhysicalParams,
    config: SolverConfig,
    t_end: float,
    observer_cadence: int,
    rhs_selector: RhsSelector = None,
    observer: Optional[Callable[[Snapshot], None]] = None,
) -> List[Snapshot]:
    """Fixed-step integration, a snapshot every ``observer_cadence`` steps (initial state included)."""
    if t_end < state0.t:
        raise ValueError(ErrorMessages.RUN_WINDOW_INVALID.format(t_end=t_end, t0=state0.t))
    if observer_cadence < 1:
        raise ValueError(f"observer_cadence must be at least 1, got {observer_cadence}")
    if not params.irrotational:
        check_state_mean(state0)

    steps = int(round((t_end - state0.t) / config.dt))
    kernel = resolve_rhs(rhs_selector, params)
    logger.info(f"Integrating {steps} steps of dt = {config.dt:g} (snapshot every {observer_cadence})")

    def observe(step: int, state: SurfaceState) -> Snapshot:
        taken = snapshot(step, state, params, config, rhs_selector)
        if observer is not None:
            observer(taken)
        logger.debug(f"snapshot {step}: t = {state.t:.6f}, max|eta| = {state.eta.max_abs():.3e}")
        return taken

    snapshots = [observe(0, state0)]
    grid = state0.grid
    eta, q = state0.eta.samples, state0.q.samples
    for step in range(1, steps + 1):
        t = state0.t + (step - 1) * config.dt
        eta, q = _advance(kernel, t, eta, q, grid, params, config, config.dt)
        check_surface(eta, params, t + config.dt)
        if step % observer_cadence == 0:
            state = SurfaceState(t=state0.t + step * config.dt, eta=state0.eta.like(eta), q=state0.q.like(q))
            snapshots.append(observe(step, state))
    return snapshots

