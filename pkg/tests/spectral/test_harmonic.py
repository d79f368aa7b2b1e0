import numpy as np
import pytest

from src.spectral.harmonic import HarmonicTestFunction, XZTestFunction, harmonic_power

STEP = 1e-5
POINTS = (np.array([0.3, -1.2, 2.0]), np.array([-0.4, 0.1, -0.9]))


def central(fn, x, z, axis):
    if axis == "x":
        return (fn(x + STEP, z) - fn(x - STEP, z)) / (2.0 * STEP)
    return (fn(x, z + STEP) - fn(x, z - STEP)) / (2.0 * STEP)


def test_harmonic_power_values():
    assert harmonic_power(2, 1.0, 2.0) == pytest.approx((-3.0 + 4.0j) / 2.0)
    assert harmonic_power(0, 5.0, -1.0) == 1.0
    assert harmonic_power(-1, 1.0, 1.0) == 0.0


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_gradient_matches_finite_differences(degree):
    tf = HarmonicTestFunction(degree=degree)
    x, z = POINTS
    phi_x, phi_z = tf.eval_gradient(x, z)
    assert np.allclose(phi_x, central(tf.eval, x, z, "x"), atol=1e-8)
    assert np.allclose(phi_z, central(tf.eval, x, z, "z"), atol=1e-8)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_sigma3_gradient_flips_vertical_component(degree):
    tf = HarmonicTestFunction(degree=degree)
    x, z = POINTS
    phi_x, phi_z = tf.eval_gradient(x, z)
    s_x, s_z = tf.eval_sigma3_gradient(x, z)
    assert np.array_equal(s_x, phi_x)
    assert np.array_equal(s_z, -phi_z)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_hessian_is_traceless_and_consistent(degree):
    tf = HarmonicTestFunction(degree=degree)
    x, z = POINTS
    phi_xx, phi_xz, phi_zz = tf.eval_hessian(x, z)
    assert np.allclose(phi_xx + phi_zz, 0.0)
    assert np.allclose(phi_xz, central(lambda a, b: tf.eval_gradient(a, b)[1], x, z, "x"), atol=1e-8)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_z_antiderivative(degree):
    tf = HarmonicTestFunction(degree=degree)
    x, z = POINTS
    assert np.allclose(central(tf.eval_z_antiderivative, x, z, "z"), tf.eval(x, z), atol=1e-8)
    assert np.allclose(tf.eval_z_antiderivative(x, np.zeros_like(x)), 0.0)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_z_derivatives_chain(degree):
    tf = HarmonicTestFunction(degree=degree)
    x, z = POINTS
    first, second, third = tf.eval_z_derivatives(x, z)
    assert np.allclose(first, tf.eval_gradient(x, z)[1])
    assert np.allclose(second, tf.eval_hessian(x, z)[2])
    assert np.allclose(third, central(lambda a, b: tf.eval_z_derivatives(a, b)[1], x, z, "z"), atol=1e-8)


@pytest.mark.parametrize("degree", [-1, 4])
def test_degree_out_of_range(degree):
    with pytest.raises(ValueError):
        HarmonicTestFunction(degree=degree)


def test_xz_test_function():
    tf = XZTestFunction()
    x, z = POINTS
    assert np.allclose(tf.eval(x, z), x * z)
    phi_x, phi_z = tf.eval_gradient(x, z)
    assert np.allclose(phi_x, z) and np.allclose(phi_z, x)
    phi_xx, phi_xz, phi_zz = tf.eval_hessian(x, z)
    assert np.all(phi_xx == 0) and np.all(phi_xz == 1) and np.all(phi_zz == 0)
    assert tf.label == "xz"
