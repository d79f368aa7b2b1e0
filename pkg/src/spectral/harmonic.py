"""Harmonic polynomial test functions φₙ = (x + iz)ⁿ / n!.

Values are complex numpy arrays; real and imaginary parts are each harmonic and are
consumed separately downstream. Because ∂ₓφₙ = φₙ₋₁ and ∂_zφₙ = iφₙ₋₁, every derivative
is another member of the family.
"""
from math import factorial
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.tools.errors import ErrorMessages

ComplexPair = Tuple[np.ndarray, np.ndarray]
ComplexTriple = Tuple[np.ndarray, np.ndarray, np.ndarray]

MAX_DEGREE = 3


def harmonic_power(m: int, x, z) -> np.ndarray:
    """(x+iz)^m / m!, identically zero for m < 0."""
    w = np.asarray(x, dtype=np.float64) + 1j * np.asarray(z, dtype=np.float64)
    if m < 0:
        return np.zeros_like(w)
    return w**m / factorial(m)


class HarmonicTestFunction(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int

    @field_validator("degree")
    @classmethod
    def _supported(cls, value: int) -> int:
        if not 0 <= value <= MAX_DEGREE:
            raise ValueError(ErrorMessages.TEST_DEGREE_INVALID.format(degree=value))
        return value

    @property
    def label(self) -> str:
        return f"phi{self.degree}"

    def eval(self, x, z) -> np.ndarray:
        return harmonic_power(self.degree, x, z)

    def eval_gradient(self, x, z) -> ComplexPair:
        lower = harmonic_power(self.degree - 1, x, z)
        return lower, 1j * lower

    def eval_sigma3_gradient(self, x, z) -> ComplexPair:
        phi_x, phi_z = self.eval_gradient(x, z)
        return phi_x, -phi_z

    def eval_z_antiderivative(self, x, z) -> np.ndarray:
        """P with ∂_z P = φₙ and P(x, 0) = 0."""
        n = self.degree
        x = np.asarray(x, dtype=np.float64)
        w = x + 1j * np.asarray(z, dtype=np.float64)
        return -1j * (w ** (n + 1) - x ** (n + 1)) / factorial(n + 1)

    def eval_z_derivatives(self, x, z) -> ComplexTriple:
        n = self.degree
        return (
            1j * harmonic_power(n - 1, x, z),
            -harmonic_power(n - 2, x, z),
            -1j * harmonic_power(n - 3, x, z),
        )

    def eval_hessian(self, x, z) -> ComplexTriple:
        """(φ_xx, φ_xz, φ_zz)"""
        lower = harmonic_power(self.degree - 2, x, z)
        return lower, 1j * lower, -lower


class XZTestFunction(BaseModel):
    """The real harmonic φ = xz, used by the third-order Green identity."""
    model_config = ConfigDict(frozen=True)

    degree: int = 2

    @property
    def label(self) -> str:
        return "xz"

    def eval(self, x, z) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) * np.asarray(z, dtype=np.float64)).astype(np.complex128)

    def eval_gradient(self, x, z) -> ComplexPair:
        x, z = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(z, dtype=np.float64))
        return z.astype(np.complex128), x.astype(np.complex128)

    def eval_hessian(self, x, z) -> ComplexTriple:
        shape = np.broadcast(np.asarray(x), np.asarray(z)).shape
        zero = np.zeros(shape, dtype=np.complex128)
        return zero, zero + 1.0, zero.copy()
