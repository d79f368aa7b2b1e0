from enum import Enum
from typing import Optional


class ErrorMessages(str, Enum):
    """错误消息枚举。

    使用 str 作为基类可以直接使用枚举值作为字符串，无需额外调用 .value
    """
    # 网格与谱运算
    GRID_SIZE_INVALID = "网格点数必须是不小于 16 的 2 的幂，收到 {n}"
    GRID_LENGTH_INVALID = "区间长度必须为正的有限数，收到 {length}"
    GRID_MISMATCH = "字段不在同一网格上: {left} vs {right}"
    FIELD_SIZE_MISMATCH = "样本数 {size} 与网格点数 {n} 不一致"
    FIELD_NOT_FINITE = "字段包含 NaN/Inf 样本 (共 {count} 个)"
    DERIVATIVE_ORDER_INVALID = "不支持的导数阶数 {order}，允许 1, 2, 3"
    MEAN_VIOLATION = "原函数要求零均值输入: mean = {mean:.3e} 超过容差 {limit:.3e}"

    # 试验函数
    TEST_DEGREE_INVALID = "试验函数阶数 {degree} 超出范围 0..3"

    # 体场与延拓
    SURFACE_BELOW_BOTTOM = "自由面必须高于底面: max|eta| = {peak:.3e}, h = {depth}"
    EXTENSION_NOT_CONVERGED = "调和延拓在 {iterations} 次迭代后未收敛，残差 {residual:.3e}"
    EXTENSION_ILL_CONDITIONED = "调和延拓病态: 模态放大 {growth:.3e} 超过上限 {limit:.1e}"
    PRESSURE_REQUIRES_IRROTATIONAL = "Bernoulli 压力重建只适用于无旋情形 (omega = 0)，收到 omega = {omega}"

    # 演化
    DNO_ORDER_INVALID = "DNO 截断阶数 {order} 超出范围 0..8"
    RHS_REQUIRES_IRROTATIONAL = "rhs_irrotational 要求 omega = 0，收到 omega = {omega}"
    EDGE_GUARD = "边界保护触发: |{field}| = {magnitude:.3e} 位于 x = {location:.4f} (阈值 {threshold:.1e})"
    NON_FINITE_STAGE = "RK4 第 {stage} 级出现 NaN/Inf (t = {t:.6f})"
    RUN_WINDOW_INVALID = "t_end = {t_end} 早于初始时刻 {t0}"
    RHS_SELECTOR_INVALID = "未知的右端选择 '{selector}'"

    # 守恒审计
    SERIES_TOO_SHORT = "{what} 至少需要 {required} 个样本，收到 {count}"
    SERIES_NOT_UNIFORM = "{what} 的时间间隔不均匀 (最大偏差 {deviation:.3e})"
    SERIES_DEGREE_MISMATCH = "账本序列阶数不一致: 期望 {expected}，收到 {found}"
    GREEN_DEGREE_INVALID = "Green 恒等式的 f 阶数 {degree} 超出范围 1..3"

    # 配置
    CONFIG_NOT_FOUND = "场景配置文件未找到: {path}"
    CONFIG_TOP_LEVEL = "场景配置文件 '{path}' 的顶层必须是字典"
    CONFIG_PARSE = "场景配置 YAML 解析失败 (第 {line} 行, 第 {column} 列): {problem}"
    CONFIG_INVALID = "场景配置 '{path}' 验证失败: {details}"
    CONFIG_UNKNOWN_KEY = "{loc}: 未知字段 '{key}'"
    CONFIG_KEY_SUGGESTION = "是否想写 '{suggestion}'?"
    CONFIG_CHECK_UNKNOWN = "未知的检查项 '{check}'"
    SWEEP_AXIS_INVALID = "扫描轴必须是 omega 或 sigma，收到 '{axis}'"
    SWEEP_VALUES_EMPTY = "扫描取值列表不能为空"

    def format(self, **kwargs) -> str:
        """格式化错误消息。

        Example:
            >>> ErrorMessages.DERIVATIVE_ORDER_INVALID.format(order=4)
            '不支持的导数阶数 4，允许 1, 2, 3'
        """
        return self.value.format(**kwargs)


class WaveAuditError(Exception):
    """所有领域异常的基类"""


class ConfigurationError(WaveAuditError, ValueError):
    """场景配置无法解析或未通过验证 (CLI 退出码 2)"""


class SeriesError(WaveAuditError, ValueError):
    """时间序列过短、为空或间隔不均匀"""


class MeanViolationError(WaveAuditError, ValueError):
    """周期原函数的零均值前提被破坏"""

    def __init__(self, mean: float, limit: float):
        self.mean = mean
        self.limit = limit
        super().__init__(ErrorMessages.MEAN_VIOLATION.format(mean=mean, limit=limit))


class NumericalFailure(WaveAuditError, RuntimeError):
    """数值失败 (CLI 退出码 3)"""

    def __init__(self, message: str, t: Optional[float] = None):
        self.t = t
        super().__init__(message)


class NonFiniteStateError(NumericalFailure):
    def __init__(self, stage: int, t: float):
        self.stage = stage
        super().__init__(ErrorMessages.NON_FINITE_STAGE.format(stage=stage, t=t), t=t)


class EdgeGuardViolation(NumericalFailure):
    def __init__(self, field: str, location: float, magnitude: float, threshold: float, t: Optional[float] = None):
        self.field = field
        self.location = location
        self.magnitude = magnitude
        super().__init__(
            ErrorMessages.EDGE_GUARD.format(field=field, magnitude=magnitude, location=location, threshold=threshold),
            t=t,
        )


class ExtensionFitError(NumericalFailure):
    def __init__(self, message: str, residual: float = float("nan")):
        self.residual = residual
        super().__init__(message)
