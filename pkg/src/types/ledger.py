import math
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

IRROTATIONAL_NAMES = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8")
VORTICITY_NAMES = ("vT1", "vT2", "vT3", "vT4", "vT5", "vT6", "vT8")
HAMILTONIAN_NAME = "H"
TENSION_CORRECTED_NAME = "T7_tension_corrected"
TENSION_RATE_NAME = "T7_tension"

IDENTITY_IDS = (
    "idA", "idB", "third_order", "xz_case",
    "weakA", "weakB", "vort_weakA", "vort_weakB",
    "contour_I1", "contour_I2", "contour_I3", "contour_I4",
    "contour_I5", "contour_I6", "contour_I7", "contour_I8",
)

ComplexPair = Tuple[float, float]


def _all_finite(values) -> bool:
    return all(math.isfinite(v) for v in values)


class DensitySample(BaseModel):
    """一个快照上的积分密度。

    irrotational: T1..T8；vorticity: vT1..vT6, vT8 (仅在 omega != 0 或强制时填充)；
    scales: 每个密度的 ∮|被积函数|；rates: 底部通量 (以及表面张力源) 的瞬时速率。
    """
    model_config = ConfigDict(frozen=True)

    t: float
    irrotational: Dict[str, float]
    vorticity: Dict[str, float] = Field(default_factory=dict)
    hamiltonian: float = 0.0
    scales: Dict[str, float] = Field(default_factory=dict)
    rates: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _finite(self) -> "DensitySample":
        for name, table in (("irrotational", self.irrotational), ("vorticity", self.vorticity),
                            ("scales", self.scales), ("rates", self.rates)):
            if not _all_finite(table.values()):
                raise ValueError(f"DensitySample.{name} contains non-finite values at t = {self.t}")
        if not math.isfinite(self.hamiltonian):
            raise ValueError(f"DensitySample.hamiltonian is not finite at t = {self.t}")
        return self

    def value(self, name: str) -> float:
        if name == HAMILTONIAN_NAME:
            return self.hamiltonian
        if name in self.irrotational:
            return self.irrotational[name]
        return self.vorticity[name]

    def names(self) -> Tuple[str, ...]:
        return tuple(self.irrotational) + (HAMILTONIAN_NAME,) + tuple(self.vorticity)


class WeakFormLedger(BaseModel):
    """A、B 及其演化方程右端，复数值以 (Re, Im) 存储"""
    model_config = ConfigDict(frozen=True)

    t: float
    degree: int = Field(ge=0, le=3)
    variant: Literal["irrotational", "vorticity"] = "irrotational"
    A: ComplexPair
    B: ComplexPair
    rhs_A: ComplexPair
    rhs_B: Optional[ComplexPair] = None
    terms: Dict[str, ComplexPair] = Field(default_factory=dict)  # rhs_B 各项，便于定位偏差

    @model_validator(mode="after")
    def _finite(self) -> "WeakFormLedger":
        pairs = [self.A, self.B, self.rhs_A] + ([self.rhs_B] if self.rhs_B is not None else [])
        if not _all_finite(v for pair in pairs for v in pair):
            raise ValueError(f"WeakFormLedger(n={self.degree}) is not finite at t = {self.t}")
        return self


class IdentityResidual(BaseModel):
    model_config = ConfigDict(frozen=True)

    identity: str
    degree: int
    residual: float = Field(ge=0)
    scale: float = Field(gt=0)
    t: Optional[float] = None

    @field_validator("identity")
    @classmethod
    def _known(cls, value: str) -> str:
        if value not in IDENTITY_IDS:
            raise ValueError(f"unknown identity id '{value}'")
        return value


class DriftEntry(BaseModel):
    """单个守恒量的漂移。balanced=True 表示已扣除底部通量的时间积分"""
    model_config = ConfigDict(frozen=True)

    name: str
    max_abs_drift: float
    relative_drift: float
    normalized_drift: float
    scale: float
    balanced: bool = False
    raw_drift: Optional[float] = None  # 未扣除通量时的 max|T(t) − T(0)|
