from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.types.grid import RealField, require_same_grid


class SurfaceState(BaseModel):
    """演化状态 (η, q) 与时间 t，η 与 q 共用一个网格"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    t: float = 0.0
    eta: RealField
    q: RealField

    @model_validator(mode="after")
    def _same_grid(self) -> "SurfaceState":
        require_same_grid(self.eta, self.q)
        return self

    @property
    def grid(self):
        return self.eta.grid


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    dno_order: int = Field(default=4, ge=0, le=8)  # DNO 级数截断阶数
    dt: float = Field(default=2.5e-3, gt=0)
    dealias: bool = True
    edge_guard_threshold: Optional[float] = Field(default=1e-10, gt=0)  # None 关闭边界保护
    edge_guard_fraction: float = Field(default=0.125, gt=0, lt=0.5)


class Snapshot(BaseModel):
    """观测快照：状态以及在该状态处求得的右端项"""
    model_config = ConfigDict(frozen=True)

    step: int
    state: SurfaceState
    gq: RealField
    eta_t: RealField
    q_t: RealField

    @property
    def t(self) -> float:
        return self.state.t
