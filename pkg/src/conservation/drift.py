from typing import Dict, Mapping, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

from src.tools.errors import ErrorMessages, SeriesError
from src.types.bulk import BULK_NAMES, BulkIntegrals
from src.types.ledger import (
    TENSION_CORRECTED_NAME,
    TENSION_RATE_NAME,
    DensitySample,
    DriftEntry,
)
from src.types.params import PhysicalParams

DRIFT_FLOOR = 1e-14


def time_integral(times: Sequence[float], rates: Sequence[float]) -> np.ndarray:
    """∫₀ᵗ rate dt′ at every sample (Simpson, trapezoid for two samples)."""
    t = np.asarray(times, dtype=np.float64)
    y = np.asarray(rates, dtype=np.float64)
    if t.size < 2:
        return np.zeros_like(y)
    if t.size == 2:
        return cumulative_trapezoid(y, x=t, initial=0.0)
    return cumulative_simpson(y, x=t, initial=0.0)


def series_drift(
    name: str,
    times: Sequence[float],
    values: Sequence[float],
    rates: Optional[Sequence[float]] = None,
    scales: Optional[Sequence[float]] = None,
) -> DriftEntry:
    """Drift of one series; with ``rates`` the balanced total value − ∫rate is measured."""
    if len(values) == 0:
        raise SeriesError(ErrorMessages.SERIES_TOO_SHORT.format(what=name, required=1, count=0))
    raw = np.asarray(values, dtype=np.float64)
    total = raw
    flux = np.zeros_like(raw)
    if rates is not None:
        flux = time_integral(times, rates)
        total = raw - flux

    drift = float(np.max(np.abs(total - total[0])))
    peak = float(np.max(np.abs(total)))
    magnitude = np.abs(total) if scales is None else np.asarray(scales, dtype=np.float64)
    scale = float(np.max(np.maximum(magnitude, np.abs(flux))))
    return DriftEntry(
        name=name,
        max_abs_drift=drift,
        relative_drift=drift / max(peak, DRIFT_FLOOR),
        normalized_drift=drift / max(scale, DRIFT_FLOOR),
        scale=scale,
        balanced=rates is not None,
        raw_drift=float(np.max(np.abs(raw - raw[0]))),
    )


def drift_report(samples: Sequence[DensitySample]) -> Dict[str, DriftEntry]:
    """Per-density drift over a run, balanced against bottom fluxes when rates were recorded."""
    if not samples:
        raise SeriesError(ErrorMessages.SERIES_TOO_SHORT.format(what="density series", required=1, count=0))
    times = [s.t for s in samples]
    first = samples[0]
    balanced = all(s.rates for s in samples)

    report: Dict[str, DriftEntry] = {}
    for name in first.names():
        values = [s.value(name) for s in samples]
        rates = [s.rates.get(name, 0.0) for s in samples] if balanced else None
        scales = [s.scales[name] for s in samples] if name in first.scales else None
        report[name] = series_drift(name, times, values, rates, scales)

    if balanced and "T7" in first.irrotational:
        corrected = [s.rates["T7"] + s.rates.get(TENSION_RATE_NAME, 0.0) for s in samples]
        report[TENSION_CORRECTED_NAME] = series_drift(
            TENSION_CORRECTED_NAME,
            times,
            [s.value("T7") for s in samples],
            corrected,
            [s.scales["T7"] for s in samples],
        )
    return report


def bulk_drift_report(
    times: Sequence[float],
    integrals: Sequence[BulkIntegrals],
    moments: Sequence[Mapping[str, float]],
    params: PhysicalParams,
) -> Dict[str, DriftEntry]:
    """Drift of the bulk integrals, balanced where they are not strict constants.

    ``moments`` per sample: bQ, bxQ, bQx2, bxQx2 (bed trace) and mass = ∮η, x_mass = ∮xη.
    I5* and I6* follow the kinematic balances dI5*/dt = I1*, dI6*/dt = I4*. With omega = 0,
    I4* + bQ and I8* + ∮xQ are balanced against gravity and bed-pressure sources; otherwise
    I4* and I8* are reported raw.
    """
    def column(name: str) -> np.ndarray:
        return np.array([item[name] for item in integrals])

    def scales(name: str) -> np.ndarray:
        index = BULK_NAMES.index(name)
        return np.array([item.scales[index] for item in integrals])

    def moment(key: str) -> np.ndarray:
        return np.array([m[key] for m in moments])

    report = {name: series_drift(name, times, column(name), scales=scales(name)) for name in BULK_NAMES}
    report["I5*"] = series_drift("I5*", times, column("I5*"), column("I1*"), scales("I5*"))
    report["I6*"] = series_drift("I6*", times, column("I6*"), column("I4*"), scales("I6*"))
    if params.irrotational:
        g = params.g
        report["I4*"] = series_drift(
            "I4*",
            times,
            column("I4*") + moment("bQ"),
            -(g * moment("mass") + 0.5 * moment("bQx2")),
            scales("I4*"),
        )
        report["I8*"] = series_drift(
            "I8*",
            times,
            column("I8*") + moment("bxQ"),
            -(g * moment("x_mass") + 0.5 * moment("bxQx2")),
            scales("I8*"),
        )
    return report
