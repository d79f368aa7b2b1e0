from typing import Any, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.types.grid import PeriodicGrid, frozen_array

BULK_NAMES = ("I1*", "I2*", "I3*", "I4*", "I5*", "I6*", "I7*", "I8*")
CONTOUR_NAMES = ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8")


class HarmonicExtension(BaseModel):
    """φ(x,z) = Σ_m Re(c_m e^{ik_m(x−x_min)}) · cosh(k_m(z+h))/cosh(k_m h)

    coefficients 按 rfft 排列 (m = 0..n/2)，c_0 与 c_{n/2} 为实数。
    每一项都满足 Laplace 方程，且 φ_z(x,−h) = 0。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: PeriodicGrid
    depth: float
    coefficients: np.ndarray
    residual: float = 0.0  # 拟合时的配点残差

    @field_validator("coefficients", mode="before")
    @classmethod
    def _as_complex(cls, value: Any) -> np.ndarray:
        return frozen_array(value, dtype=np.complex128)


class BulkSample(BaseModel):
    """体内点的势函数及其导数；u, v, p_over_rho 按需填充"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    z: np.ndarray
    phi: np.ndarray
    phi_x: np.ndarray
    phi_z: np.ndarray
    phi_xx: np.ndarray
    phi_xz: np.ndarray
    phi_zz: np.ndarray
    phi_zzz: np.ndarray
    u: Optional[np.ndarray] = None
    v: Optional[np.ndarray] = None
    p_over_rho: Optional[np.ndarray] = None


class BulkIntegrals(BaseModel):
    """流体域上的体积分 I1*..I8* 以及对应的 ∬|被积函数|"""
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]
    scales: Tuple[float, ...]

    def as_dict(self) -> dict:
        return dict(zip(BULK_NAMES, self.values))

    def __getitem__(self, name: str) -> float:
        return self.values[BULK_NAMES.index(name)]
