import numpy as np
import pytest

from src.spectral.grid import (
    anchored_antiderivative,
    antiderivative,
    dealias,
    derivative,
    integrate,
    make_grid,
    parseval_energy,
    wavenumbers,
    x_field,
)
from src.tools.errors import MeanViolationError
from src.types.grid import RealField


def make_field(n, length, fn, x_min=0.0):
    grid = make_grid(n, length, x_min)
    return RealField(grid=grid, samples=fn(grid.nodes))


@pytest.mark.parametrize("order,expected", [
    (1, lambda x: 3.0 * np.cos(3.0 * x)),
    (2, lambda x: -9.0 * np.sin(3.0 * x)),
    (3, lambda x: -27.0 * np.cos(3.0 * x)),
])
def test_derivative_of_sine_is_exact(order, expected):
    f = make_field(64, 2.0 * np.pi, lambda x: np.sin(3.0 * x))
    out = derivative(f, order)
    assert np.max(np.abs(out.samples - expected(f.grid.nodes))) < 1e-10


def test_derivative_rejects_unsupported_order():
    f = make_field(32, 2.0 * np.pi, np.sin)
    with pytest.raises(ValueError):
        derivative(f, 4)


def test_derivative_of_gaussian_matches_analytic():
    f = make_field(256, 100.0, lambda x: np.exp(-((x / 4.0) ** 2)), x_min=-50.0)
    x = f.grid.nodes
    exact = -2.0 * x / 16.0 * np.exp(-((x / 4.0) ** 2))
    assert np.max(np.abs(derivative(f).samples - exact)) < 1e-12


def test_antiderivative_of_cosine():
    f = make_field(64, 2.0 * np.pi, lambda x: np.cos(3.0 * x))
    out = antiderivative(f)
    assert np.max(np.abs(out.samples - np.sin(3.0 * f.grid.nodes) / 3.0)) < 1e-13
    # 输出保持零均值
    assert abs(out.mean()) < 1e-15


def test_antiderivative_refuses_nonzero_mean():
    f = make_field(32, 2.0 * np.pi, lambda x: 1.0 + np.cos(x))
    with pytest.raises(MeanViolationError) as info:
        antiderivative(f)
    assert info.value.mean == pytest.approx(1.0)


def test_anchored_antiderivative_vanishes_at_origin():
    f = make_field(128, 64.0, lambda x: -2.0 * x / 9.0 * np.exp(-((x / 3.0) ** 2)), x_min=-32.0)
    out = anchored_antiderivative(f)
    assert out.samples[0] == 0.0
    assert np.max(np.abs(out.samples - np.exp(-((f.grid.nodes / 3.0) ** 2)))) < 1e-12


def test_dealias_keeps_low_modes_and_drops_high_modes():
    low = make_field(64, 2.0 * np.pi, lambda x: np.cos(5.0 * x))
    high = make_field(64, 2.0 * np.pi, lambda x: np.cos(30.0 * x))
    # FFT 往返的舍入误差按 n·eps 计
    roundoff = 16 * 64 * np.finfo(np.float64).eps
    assert np.max(np.abs(dealias(low).samples - low.samples)) < roundoff
    assert np.max(np.abs(dealias(high).samples)) < roundoff


def test_dealias_is_idempotent():
    f = make_field(64, 2.0 * np.pi, lambda x: np.exp(np.sin(x)) + 0.3 * np.cos(25.0 * x))
    once = dealias(f)
    assert np.max(np.abs(once.samples - f.samples)) > 0.1
    roundoff = 16 * 64 * np.finfo(np.float64).eps * f.max_abs()
    assert np.max(np.abs(dealias(once).samples - once.samples)) < roundoff


def test_integrate_gaussian():
    f = make_field(256, 100.0, lambda x: np.exp(-((x / 4.0) ** 2)), x_min=-50.0)
    assert integrate(f) == pytest.approx(4.0 * np.sqrt(np.pi), rel=1e-14)


def test_parseval_energy_matches_quadrature():
    f = make_field(128, 64.0, lambda x: np.exp(-((x / 3.0) ** 2)) * np.cos(x), x_min=-32.0)
    assert parseval_energy(f) == pytest.approx(float(np.sum(f.samples**2) * f.grid.dx), rel=1e-12)


def test_wavenumbers_layout():
    grid = make_grid(16, 2.0 * np.pi)
    k = wavenumbers(grid)
    assert k.shape == (9,)
    assert np.allclose(k, np.arange(9))
    assert not k.flags.writeable


@pytest.mark.parametrize("n", [8, 100, 0])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        make_grid(n, 1.0)


def test_field_rejects_nan_and_wrong_size():
    grid = make_grid(16, 1.0)
    with pytest.raises(ValueError):
        RealField(grid=grid, samples=np.full(16, np.nan))
    with pytest.raises(ValueError):
        RealField(grid=grid, samples=np.zeros(15))


def test_x_field_moments():
    grid = make_grid(256, 100.0, -50.0)
    x = x_field(grid)
    even = x.like(np.exp(-((grid.nodes / 4.0) ** 2)))
    assert abs(integrate(x.like(x.samples * even.samples))) < 1e-12
    shifted = np.exp(-(((grid.nodes - 5.0) / 4.0) ** 2))
    assert integrate(x.like(x.samples * shifted)) == pytest.approx(5.0 * 4.0 * np.sqrt(np.pi), rel=1e-12)
