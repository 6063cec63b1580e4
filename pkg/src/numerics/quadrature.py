#!/usr/bin/env python3
"""
半无限区间自适应积分
被积函数以高斯方式衰减，截断上限取漂移中心外 cutoff_sigma 个衰减宽度
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from threading import Lock
from typing import Callable, Dict, Any, Optional, Sequence

import numpy as np
from scipy import integrate

from ..common.errors import ConfigurationError, QuadratureAccuracyError
from ..utils.config import QuadratureConfig, quad_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureSpec:
    """积分精度配置"""
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 200
    cutoff_sigma: float = 12.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ConfigurationError(f"积分容差必须为正: abs={self.abs_tol}, rel={self.rel_tol}")
        if self.max_subdivisions < 1:
            raise ConfigurationError(f"max_subdivisions 必须 ≥ 1: {self.max_subdivisions}")
        if self.cutoff_sigma < 8:
            raise ConfigurationError(f"cutoff_sigma 必须 ≥ 8: {self.cutoff_sigma}")

    @classmethod
    def from_config(cls, config: Optional[QuadratureConfig] = None) -> "QuadratureSpec":
        config = config or quad_config
        return cls(
            abs_tol=config.abs_tol,
            rel_tol=config.rel_tol,
            max_subdivisions=config.max_subdivisions,
            cutoff_sigma=config.cutoff_sigma,
        )


def _quad_part(func: Callable[[float], float], upper: float, spec: QuadratureSpec,
               points: Optional[Sequence[float]]):
    result = integrate.quad(
        func, 0.0, upper,
        epsabs=spec.abs_tol / 2,
        epsrel=spec.rel_tol / 2,
        limit=spec.max_subdivisions,
        points=points,
        full_output=1,
    )
    value, error = result[0], result[1]
    message = result[3] if len(result) > 3 else None
    return value, error, message


def integrate_semi_infinite(f: Callable[[float], complex], decay_width: float,
                            spec: QuadratureSpec, drift: float = 0.0) -> complex:
    """
    计算 ∫₀^∞ f(k) dk

    Args:
        f: 实变量复值被积函数，在 drift 之后按宽度 decay_width 的高斯衰减
        decay_width: 高斯衰减宽度 (> 0)
        spec: 精度配置
        drift: 被积函数峰值位置（≥ 0 时计入截断上限）

    Returns:
        积分值

    Raises:
        QuadratureAccuracyError: 误差估计超过 max(abs_tol, rel_tol·|结果|)
    """
    if not (decay_width > 0 and math.isfinite(decay_width)):
        raise ValueError(f"衰减宽度必须为正有限值: {decay_width}")
    centre = max(0.0, drift)
    upper = centre + spec.cutoff_sigma * decay_width
    points = [centre] if centre > 0 else None

    re_value, re_error, re_message = _quad_part(lambda k: complex(f(k)).real, upper, spec, points)
    im_value, im_error, im_message = _quad_part(lambda k: complex(f(k)).imag, upper, spec, points)

    value = complex(re_value, im_value)
    error = math.hypot(re_error, im_error)
    tolerance = max(spec.abs_tol, spec.rel_tol * abs(value))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)) or error > tolerance:
        message = re_message or im_message or "误差估计超过容差"
        raise QuadratureAccuracyError(
            f"半无限积分未收敛: {message} (估计 {value}, 误差 {error:.3e}, 容差 {tolerance:.3e})",
            best_estimate=value,
            error_bound=error,
        )
    return value


def simpson_2d(values: np.ndarray, x: np.ndarray, y: np.ndarray) -> complex:
    """张量网格上的复合 Simpson 二重积分，values[i, j] 对应 (x[i], y[j])"""
    inner = integrate.simpson(values, x=y, axis=1)
    return complex(integrate.simpson(inner, x=x))


class EscalationStrategy(Enum):
    """积分失败后的升级策略"""
    NONE = "none"
    DOUBLE_SUBDIVISIONS = "double_subdivisions"
    WIDEN_CUTOFF = "widen_cutoff"


@dataclass
class EscalationConfig:
    """升级配置"""
    max_escalations: int = quad_config.max_escalations
    strategy: EscalationStrategy = EscalationStrategy.DOUBLE_SUBDIVISIONS
    subdivision_factor: int = 2
    cutoff_step: float = 4.0


class QuadratureRunner:
    """带逐级升级的积分执行器"""

    def __init__(self, spec: Optional[QuadratureSpec] = None, config: Optional[EscalationConfig] = None):
        self.spec = spec or QuadratureSpec.from_config()
        self.config = config or EscalationConfig()
        self.logger = logging.getLogger(__name__)
        self._lock = Lock()

        self.stats = {
            'total_calls': 0,
            'escalated_calls': 0,
            'success_after_escalation': 0,
            'permanent_failures': 0,
        }

    def _count(self, key: str):
        with self._lock:
            self.stats[key] += 1

    def _escalate(self, spec: QuadratureSpec) -> QuadratureSpec:
        if self.config.strategy == EscalationStrategy.DOUBLE_SUBDIVISIONS:
            return replace(spec, max_subdivisions=spec.max_subdivisions * self.config.subdivision_factor)
        if self.config.strategy == EscalationStrategy.WIDEN_CUTOFF:
            return replace(spec, cutoff_sigma=spec.cutoff_sigma + self.config.cutoff_step)
        return spec

    def integrate(self, f: Callable[[float], complex], decay_width: float, drift: float = 0.0,
                  spec: Optional[QuadratureSpec] = None) -> complex:
        """
        执行积分，精度不足时按策略升级后重试

        Args:
            f: 被积函数
            decay_width: 高斯衰减宽度
            drift: 峰值漂移
            spec: 覆盖默认精度配置

        Returns:
            积分值
        """
        self._count('total_calls')
        current = spec or self.spec
        attempts = 1 if self.config.strategy == EscalationStrategy.NONE else self.config.max_escalations + 1

        for attempt in range(attempts):
            try:
                value = integrate_semi_infinite(f, decay_width, current, drift)
                if attempt > 0:
                    self._count('success_after_escalation')
                    self.logger.debug(f"积分在第{attempt + 1}次尝试后收敛")
                return value
            except QuadratureAccuracyError as e:
                if attempt == attempts - 1:
                    self._count('permanent_failures')
                    self.logger.error(f"积分在{attempts}次尝试后仍未收敛: {e}")
                    raise
                if attempt == 0:
                    self._count('escalated_calls')
                current = self._escalate(current)
                self.logger.debug(f"积分第{attempt + 1}次尝试失败，升级为 {current}")

        raise RuntimeError("unreachable")

    def get_statistics(self) -> Dict[str, Any]:
        """获取执行统计"""
        with self._lock:
            stats = dict(self.stats)
        total = stats['total_calls']
        stats['failure_rate'] = stats['permanent_failures'] / total * 100 if total else 0.0
        return stats
