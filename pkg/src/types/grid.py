import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.tools.errors import ErrorMessages


def frozen_array(values: Any, dtype=np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


class PeriodicGrid(BaseModel):
    """均匀周期网格，节点 x_j = x_min + j·L/n"""
    model_config = ConfigDict(frozen=True)

    n_points: int
    length: float
    x_min: float = 0.0

    @field_validator("n_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 16 or value & (value - 1):
            raise ValueError(ErrorMessages.GRID_SIZE_INVALID.format(n=value))
        return value

    @field_validator("length")
    @classmethod
    def _positive_length(cls, value: float) -> float:
        if not math.isfinite(value) or value <= 0:
            raise ValueError(ErrorMessages.GRID_LENGTH_INVALID.format(length=value))
        return value

    @field_validator("x_min")
    @classmethod
    def _finite_origin(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"x_min must be finite, got {value}")
        return value

    @property
    def dx(self) -> float:
        return self.length / self.n_points

    @property
    def nodes(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @property
    def n_modes(self) -> int:
        """rfft 系数个数 n/2 + 1"""
        return self.n_points // 2 + 1


class RealField(BaseModel):
    """网格上的实值采样函数，样本只读"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: PeriodicGrid
    samples: np.ndarray

    @field_validator("samples", mode="before")
    @classmethod
    def _as_float_array(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_samples(self) -> "RealField":
        if self.samples.shape != (self.grid.n_points,):
            raise ValueError(ErrorMessages.FIELD_SIZE_MISMATCH.format(size=self.samples.size, n=self.grid.n_points))
        bad = int(np.count_nonzero(~np.isfinite(self.samples)))
        if bad:
            raise ValueError(ErrorMessages.FIELD_NOT_FINITE.format(count=bad))
        return self

    def like(self, samples: Any) -> "RealField":
        return RealField(grid=self.grid, samples=samples)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def mean(self) -> float:
        return float(np.mean(self.samples))


def require_same_grid(*fields: RealField) -> PeriodicGrid:
    grid = fields[0].grid
    for other in fields[1:]:
        if other.grid != grid:
            raise ValueError(ErrorMessages.GRID_MISMATCH.format(left=grid, right=other.grid))
    return grid
