from pydantic import BaseModel, ConfigDict, Field


class PhysicalParams(BaseModel):
    """物理常数 (SI 单位)。sigma 为运动学表面张力系数 (已除以 rho)"""
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    g: float = Field(default=1.0, gt=0)  # 重力加速度 m/s²
    h: float = Field(default=1.0, gt=0)  # 水深 m
    rho: float = Field(default=1.0, gt=0)  # 密度 kg/m³
    omega: float = 0.0  # 常涡量 1/s
    sigma: float = Field(default=0.0, ge=0)  # m³/s²

    @property
    def irrotational(self) -> bool:
        return self.omega == 0.0
