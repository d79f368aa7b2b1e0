import math
import re
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.tools.errors import ErrorMessages
from src.types.bulk import BULK_NAMES
from src.types.grid import PeriodicGrid
from src.types.ledger import (
    HAMILTONIAN_NAME,
    IDENTITY_IDS,
    IRROTATIONAL_NAMES,
    TENSION_CORRECTED_NAME,
    VORTICITY_NAMES,
    DriftEntry,
    IdentityResidual,
)
from src.types.params import PhysicalParams
from src.types.state import SolverConfig

OutputKind = Literal["densities_csv", "residuals_csv", "summary_json", "bulk_csv"]
ALL_OUTPUTS: Tuple[str, ...] = ("densities_csv", "residuals_csv", "summary_json", "bulk_csv")

DRIFT_TARGETS = IRROTATIONAL_NAMES + (HAMILTONIAN_NAME, TENSION_CORRECTED_NAME) + VORTICITY_NAMES + BULK_NAMES
PLAIN_CHECKS = (
    "T7_conserved",
    "hamiltonian_matches_T2",
    "area_mass",
    "vorticity_area",
    "omega_reduction",
    "surface_pressure",
    "edge_guard",
    "weak_order",
)
_RESIDUAL_CHECK = re.compile(r"^residual:(?P<identity>[A-Za-z0-9_]+)(?::(?P<degree>\d))?$")


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_points: int = 256
    length: float = Field(default=100.0, gt=0)
    x_min: Optional[float] = None  # 缺省为 -length/2，使脉冲居中

    @model_validator(mode="after")
    def _valid_grid(self) -> "GridSpec":
        self.to_grid()
        return self

    def origin(self) -> float:
        return -0.5 * self.length if self.x_min is None else self.x_min

    def to_grid(self) -> PeriodicGrid:
        return PeriodicGrid(n_points=self.n_points, length=self.length, x_min=self.origin())


class GaussianPulse(BaseModel):
    """η₀ = a·exp(−((x−c)/w)²)，q₀ = q_amplitude·exp(−((x−c)/w)²)"""
    model_config = ConfigDict(extra="forbid")

    amplitude: float
    width: float = Field(gt=0)
    center: float = 0.0
    q_amplitude: float = 0.0
    zero_mass: bool = False  # 改用 a(1 − 2s²)e^{−s²}，s = (x−c)/w，使 ∮η = 0


class CosineMode(BaseModel):
    """η₀ = a·cos(2πm(x − x_min)/L)，q₀ = 0；周期数据需关闭边界保护"""
    model_config = ConfigDict(extra="forbid")

    amplitude: float
    mode_index: int = Field(ge=1)


class InitialCondition(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gaussian: Optional[GaussianPulse] = None
    cosine_mode: Optional[CosineMode] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "InitialCondition":
        if (self.gaussian is None) == (self.cosine_mode is None):
            raise ValueError("exactly one of 'gaussian' or 'cosine_mode' must be given")
        return self

    @property
    def amplitude(self) -> float:
        return self.gaussian.amplitude if self.gaussian is not None else self.cosine_mode.amplitude


class AuditConfig(BaseModel):
    """审计阶段的参数：延拓拟合、体积分节点与弱形式阶数"""
    model_config = ConfigDict(extra="forbid")

    extension_tol: float = Field(default=1e-10, gt=0)
    extension_max_iter: int = Field(default=5, ge=1)
    bulk_nodes: int = Field(default=32, ge=8)
    weak_degrees: List[int] = Field(default_factory=lambda: [0, 1, 2, 3])
    green_degrees: List[int] = Field(default_factory=lambda: [0, 1, 2, 3])
    force_vorticity: bool = False  # omega = 0 时也计算涡量密度表

    @field_validator("weak_degrees", "green_degrees")
    @classmethod
    def _degrees(cls, value: List[int]) -> List[int]:
        for degree in value:
            if not 0 <= degree <= 3:
                raise ValueError(ErrorMessages.TEST_DEGREE_INVALID.format(degree=degree))
        return sorted(set(value))


def check_known(check_id: str) -> bool:
    if check_id in PLAIN_CHECKS:
        return True
    if check_id.startswith("drift:"):
        return check_id[len("drift:"):] in DRIFT_TARGETS
    match = _RESIDUAL_CHECK.match(check_id)
    return bool(match) and match.group("identity") in IDENTITY_IDS


class CheckSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    tolerance: float = Field(gt=0)
    expect: Literal["pass", "fail"] = "pass"  # fail: 指标必须超出容差 (预期的守恒律失效)

    @field_validator("id")
    @classmethod
    def _known(cls, value: str) -> str:
        if not check_known(value):
            raise ValueError(ErrorMessages.CONFIG_CHECK_UNKNOWN.format(check=value))
        return value


class Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    grid: GridSpec = Field(default_factory=GridSpec)
    params: PhysicalParams = Field(default_factory=PhysicalParams)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    initial: InitialCondition
    t_end: float = Field(gt=0)
    observer_cadence: int = Field(default=40, ge=1)
    audit: AuditConfig = Field(default_factory=AuditConfig)
    checks: List[CheckSpec] = Field(default_factory=list)
    outputs: List[OutputKind] = Field(default_factory=lambda: list(ALL_OUTPUTS))

    @model_validator(mode="after")
    def _amplitude_below_depth(self) -> "Scenario":
        peak = abs(self.initial.amplitude)
        if not peak < self.params.h:
            raise ValueError(ErrorMessages.SURFACE_BELOW_BOTTOM.format(peak=peak, depth=self.params.h))
        return self

    @property
    def include_vorticity(self) -> bool:
        return not self.params.irrotational or self.audit.force_vorticity


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    metric: Optional[float]
    tolerance: float
    passed: bool
    expect: Literal["pass", "fail"] = "pass"


class RunReport(BaseModel):
    """一次场景运行的全部结果；wall_clock 只记日志，不写入产物"""

    scenario: str
    params: PhysicalParams
    include_vorticity: bool = False
    densities: List[Dict[str, float]] = Field(default_factory=list)  # 每行: t, T1..T8, H, (vT*)
    bulk: List[Dict[str, float]] = Field(default_factory=list)  # 每行: t, I1*..I8*
    drift: Dict[str, DriftEntry] = Field(default_factory=dict)
    residuals: List[IdentityResidual] = Field(default_factory=list)
    edge_guard_peak: float = 0.0
    wall_clock: float = 0.0
    checks: List[CheckResult] = Field(default_factory=list)
    failure: Optional[str] = None
    failure_time: Optional[float] = None
    outputs: List[OutputKind] = Field(default_factory=lambda: list(ALL_OUTPUTS))

    @property
    def passed(self) -> bool:
        return self.failure is None and all(check.passed for check in self.checks)

    @property
    def exit_code(self) -> int:
        if self.failure is not None:
            return 3
        return 0 if self.passed else 1

    def summary(self) -> Dict[str, Dict[str, Union[float, bool, None]]]:
        """Flat map check id → {metric, tolerance, pass}; NaN metrics become None."""
        out = {}
        for check in self.checks:
            metric = check.metric
            if metric is not None and not math.isfinite(metric):
                metric = None
            out[check.id] = {"metric": metric, "tolerance": check.tolerance, "pass": check.passed}
        return out
