#!/usr/bin/env python3
"""
统一异常定义
所有模块抛出的错误都派生自 HarvestError，CLI 据此映射退出码
"""
from typing import Optional


class HarvestError(Exception):
    """项目异常基类"""


class ConfigurationError(HarvestError, ValueError):
    """配置或参数错误（CLI 退出码 1）"""


class InvalidDetectorError(ConfigurationError):
    """探测器参数不满足不变量"""


class UnknownPresetError(ConfigurationError):
    """未知的扫描预设"""


class NumericalError(HarvestError, ArithmeticError):
    """数值计算失败（CLI 退出码 2）"""


class NumericalOverflowError(NumericalError, OverflowError):
    """结果超出双精度可表示范围"""


class QuadratureAccuracyError(NumericalError):
    """自适应积分未达到要求精度"""

    def __init__(self, message: str, best_estimate: complex = 0j, error_bound: float = float("inf")):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound


class NonHermitianError(NumericalError):
    """矩阵偏离厄米性超过容差"""


class InvalidStateError(NumericalError):
    """密度矩阵不是有效量子态"""


class LpNumericalTrouble(NumericalError):
    """单纯形迭代耗尽或出现数值问题"""


class DimensionMismatchError(HarvestError, ValueError):
    """矩阵维度不匹配"""


class UnsupportedSmearingError(HarvestError, ValueError):
    """闭式推迟/超前传播子不支持的涂抹配置"""


class ScenarioDomainError(HarvestError, ValueError):
    """角度超出反三角函数定义域"""


class ScenarioConstructionError(HarvestError, ValueError):
    """测量场景构造失败，constraint 指明未满足的约束"""

    def __init__(self, message: str, constraint: Optional[str] = None):
        super().__init__(message)
        self.constraint = constraint


class PreconditionError(HarvestError, ValueError):
    """闭式公式的前提条件不成立"""


class MissingScalarError(HarvestError, KeyError):
    """PropagatorSet 中缺少所需的传播子标量"""


class SweepOutputError(HarvestError, OSError):
    """扫描结果写出失败"""
