"""
数值内核模块
复误差函数与半无限积分
"""
from .special import (
    faddeeva,
    erf_c,
    erfi_c,
    scaled_exp_erfi,
    scaled_exp_erf,
    scaled_exp_erfc,
    gaussian_half_line_moments,
    safe_exp,
)
from .quadrature import (
    QuadratureSpec,
    integrate_semi_infinite,
    simpson_2d,
    QuadratureRunner,
    EscalationStrategy,
    EscalationConfig,
)

__all__ = [
    'faddeeva',
    'erf_c',
    'erfi_c',
    'scaled_exp_erfi',
    'scaled_exp_erf',
    'scaled_exp_erfc',
    'gaussian_half_line_moments',
    'safe_exp',
    'QuadratureSpec',
    'integrate_semi_infinite',
    'simpson_2d',
    'QuadratureRunner',
    'EscalationStrategy',
    'EscalationConfig',
]
