#!/usr/bin/env python3
"""
复误差函数内核
以 Faddeeva 函数 w(z) = e^{-z²}·erfc(-iz) 为基础，提供不产生中间溢出的
e^a·erf / e^a·erfi / e^a·erfc 组合，以及半直线高斯矩
"""
import cmath
import math
from typing import List

from scipy import special

from ..common.errors import NumericalOverflowError

# exp() 的双精度上限
EXP_LIMIT = 709.0
# 直接计算 e^a 与 erfi 乘积时允许的指数范围
_DIRECT_EXP_LIMIT = 700.0
_DIRECT_SQUARE_LIMIT = 600.0


def _check_finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NumericalOverflowError(f"{what} 结果溢出")
    return value


def _check_argument(z: complex, what: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} 的参数必须有限: {z}")
    return z


def safe_exp(x: complex) -> complex:
    """指数函数，实部超过双精度范围时抛出 NumericalOverflowError"""
    x = complex(x)
    if x.real > EXP_LIMIT:
        raise NumericalOverflowError(f"指数实部 {x.real:.6g} 超出双精度范围")
    return cmath.exp(x)


def faddeeva(z: complex) -> complex:
    """
    Faddeeva 函数 w(z) = e^{-z²}·erfc(-iz)

    Args:
        z: 复数参数

    Returns:
        w(z)；下半平面远处的真实溢出以 NumericalOverflowError 报告
    """
    z = _check_argument(z, "faddeeva")
    return _check_finite(complex(special.wofz(z)), f"w({z})")


def erf_c(z: complex) -> complex:
    """复误差函数 erf(z)，按 erf(-z) = -erf(z) 严格奇对称"""
    z = _check_argument(z, "erf_c")
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        return -_check_finite(complex(special.erf(-z)), f"erf({z})")
    return _check_finite(complex(special.erf(z)), f"erf({z})")


def erfi_c(z: complex) -> complex:
    """虚误差函数 erfi(z) = -i·erf(iz)"""
    z = _check_argument(z, "erfi_c")
    return -1j * erf_c(1j * z)


def scaled_exp_erfi(a: complex, z: complex) -> complex:
    """
    计算 e^a·erfi(z)，大参数时把指数合并进 Faddeeva 函数

    Args:
        a: 指数参数
        z: erfi 参数

    Returns:
        e^a·erfi(z)
    """
    a = _check_argument(a, "scaled_exp_erfi")
    z = _check_argument(z, "scaled_exp_erfi")
    z2 = z * z
    if -_DIRECT_EXP_LIMIT < a.real < _DIRECT_EXP_LIMIT and z2.real < _DIRECT_SQUARE_LIMIT:
        return _check_finite(cmath.exp(a) * erfi_c(z), "e^a·erfi(z)")

    # erfi(z) = ±i(1 - e^{z²} w(∓z))，上下半平面分别取有界的 w
    if z.imag > 0:
        value = 1j * safe_exp(a) - 1j * safe_exp(a + z2) * faddeeva(z)
    else:
        value = 1j * safe_exp(a + z2) * faddeeva(-z) - 1j * safe_exp(a)
    return _check_finite(value, "e^a·erfi(z)")


def scaled_exp_erf(a: complex, u: complex) -> complex:
    """计算 e^a·erf(u) = i·e^a·erfi(-iu)"""
    return 1j * scaled_exp_erfi(a, -1j * complex(u))


def scaled_exp_erfc(a: complex, u: complex) -> complex:
    """
    计算 e^a·erfc(u)

    右半平面 erfc(u) = e^{-u²}w(iu)，左半平面用 erfc(u) = 2 - erfc(-u)
    """
    a = _check_argument(a, "scaled_exp_erfc")
    u = _check_argument(u, "scaled_exp_erfc")
    shifted = a - u * u
    if u.real >= 0:
        value = safe_exp(shifted) * faddeeva(1j * u)
    else:
        value = 2.0 * safe_exp(a) - safe_exp(shifted) * faddeeva(-1j * u)
    return _check_finite(value, "e^a·erfc(u)")


def gaussian_half_line_moments(a: complex, b: complex, c: complex, n_max: int) -> List[complex]:
    """
    半直线高斯矩 J_n = ∫₀^∞ x^n e^{-a x² + b x + c} dx，n = 0..n_max

    J_0 由 e^{c+b²/4a}·erfc(-b/2√a) 给出，其余由
    J_n = ((n-1)J_{n-2} + b·J_{n-1}) / (2a) 递推

    Args:
        a: 二次项系数，实部 > 0
        b: 一次项系数
        c: 常数项（整体指数因子）
        n_max: 最高阶

    Returns:
        长度为 n_max+1 的列表
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a.real <= 0:
        raise ValueError(f"二次项系数实部必须为正: {a}")
    if n_max < 0:
        raise ValueError("n_max 不能为负")

    root_a = cmath.sqrt(a)
    j0 = 0.5 * cmath.sqrt(math.pi / a) * scaled_exp_erfc(c + b * b / (4.0 * a), -b / (2.0 * root_a))
    moments = [j0]
    if n_max >= 1:
        moments.append((safe_exp(c) + b * j0) / (2.0 * a))
    for n in range(2, n_max + 1):
        moments.append(((n - 1) * moments[n - 2] + b * moments[n - 1]) / (2.0 * a))
    return moments
