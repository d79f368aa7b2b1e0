import numpy as np
import pytest

from src.conservation.drift import bulk_drift_report, drift_report, series_drift, time_integral
from src.tools.errors import SeriesError
from src.types.bulk import BULK_NAMES, BulkIntegrals
from src.types.ledger import IRROTATIONAL_NAMES, TENSION_CORRECTED_NAME, TENSION_RATE_NAME, DensitySample
from src.types.params import PhysicalParams

TIMES = [0.0, 0.25, 0.5, 0.75, 1.0]


def make_sample(t, values=None, rates=None):
    table = {name: 1.0 for name in IRROTATIONAL_NAMES}
    table.update(values or {})
    return DensitySample(
        t=t,
        irrotational=table,
        hamiltonian=table["T2"],
        scales={name: 1.0 for name in IRROTATIONAL_NAMES} | {"H": 1.0},
        rates=rates or {},
    )


def test_time_integral_of_linear_rate():
    rates = [2.0 * t for t in TIMES]
    assert np.allclose(time_integral(TIMES, rates), np.square(TIMES), atol=1e-14)


def test_time_integral_two_samples_uses_trapezoid():
    assert np.allclose(time_integral([0.0, 0.5], [1.0, 3.0]), [0.0, 1.0])
    assert np.array_equal(time_integral([0.0], [5.0]), [0.0])


def test_balanced_series_has_no_drift():
    values = [3.0 + 2.0 * t for t in TIMES]
    entry = series_drift("T4", TIMES, values, rates=[2.0] * len(TIMES))
    assert entry.balanced
    assert entry.max_abs_drift < 1e-14
    assert entry.raw_drift == pytest.approx(2.0)


def test_unbalanced_drift_metrics():
    entry = series_drift("T3", TIMES, [1.0, 1.0, 1.5, 1.0, 1.0])
    assert entry.max_abs_drift == 0.5
    assert entry.relative_drift == pytest.approx(0.5 / 1.5)
    assert entry.normalized_drift == pytest.approx(0.5 / 1.5)


def test_drift_scale_floor():
    entry = series_drift("T1", TIMES, [0.0] * 5, scales=[0.0] * 5)
    assert entry.normalized_drift == 0.0
    assert entry.scale == 0.0


def test_empty_series_is_rejected():
    with pytest.raises(SeriesError):
        series_drift("T1", [], [])
    with pytest.raises(SeriesError):
        drift_report([])


def test_tension_corrected_total_is_reported():
    loss = 0.02
    samples = [
        make_sample(t, values={"T7": 1.0 - loss * t}, rates={"T7": 0.0, TENSION_RATE_NAME: -loss})
        for t in TIMES
    ]
    report = drift_report(samples)
    assert report["T7"].max_abs_drift == pytest.approx(loss)
    assert report[TENSION_CORRECTED_NAME].max_abs_drift < 1e-14
    assert report["T1"].max_abs_drift == 0.0
    assert "H" in report


def test_drift_report_without_rates_is_raw():
    report = drift_report([make_sample(t) for t in TIMES])
    assert not report["T4"].balanced
    assert TENSION_CORRECTED_NAME not in report


def test_bulk_drift_of_still_water_is_zero():
    still = (0.0, -32.0, 64.0, 0.0, -8.0, -32.0, 0.0, 0.0)
    integrals = [BulkIntegrals(values=still, scales=tuple(abs(v) + 1.0 for v in still)) for _ in TIMES]
    moments = [{"bQ": 0.0, "bxQ": 0.0, "bQx2": 0.0, "bxQx2": 0.0, "mass": 0.0, "x_mass": 0.0} for _ in TIMES]
    report = bulk_drift_report(TIMES, integrals, moments, PhysicalParams())
    assert set(report) == set(BULK_NAMES)
    assert all(entry.max_abs_drift == 0.0 for entry in report.values())
    assert report["I5*"].balanced and report["I4*"].balanced


def test_bulk_drift_skips_pressure_balance_with_vorticity():
    still = (0.0, -32.0, 64.0, 0.0, 0.0, -32.0, 32.0, 0.0)
    integrals = [BulkIntegrals(values=still, scales=(1.0,) * 8) for _ in TIMES]
    moments = [{"bQ": 0.0, "bxQ": 0.0, "bQx2": 0.0, "bxQx2": 0.0, "mass": 0.0, "x_mass": 0.0} for _ in TIMES]
    report = bulk_drift_report(TIMES, integrals, moments, PhysicalParams(omega=0.5))
    assert not report["I4*"].balanced
    assert not report["I8*"].balanced
