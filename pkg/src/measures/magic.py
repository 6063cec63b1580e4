#!/usr/bin/env python3
"""
qutrit 魔力（mana）
只处理收获末态的稀疏形式：除 ρ₂₂、ρ₃₃、ρ₁₃、ρ₃₁ 外与基态一致
"""
import logging
import math

import numpy as np
from scipy import special

from ..common.errors import DimensionMismatchError, PreconditionError
from ..field.detector_params import DetectorParams

logger = logging.getLogger(__name__)

SPARSITY_TOL = 1e-10
SQRT3 = math.sqrt(3.0)

# 必须为零的矩阵元 (ρ₁₁, ρ₁₂, ρ₂₁, ρ₂₃, ρ₃₂)
_ZERO_ENTRIES = ((0, 0), (0, 1), (1, 0), (1, 2), (2, 1))


def mana(rho: np.ndarray) -> float:
    """
    M = log(1 − ρ₂₂ + ⅓[|ρ₂₂ + 2Re ρ₁₃| + |ρ₂₂ − Re ρ₁₃ − √3 Im ρ₁₃| + |ρ₂₂ − Re ρ₁₃ + √3 Im ρ₁₃|])

    Args:
        rho: 3×3 密度矩阵

    Raises:
        PreconditionError: 稀疏形式不满足
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise DimensionMismatchError(f"mana 需要 3×3 态，收到 {rho.shape}")
    for i, j in _ZERO_ENTRIES:
        if abs(rho[i, j]) > SPARSITY_TOL:
            raise PreconditionError(f"mana 公式要求 ρ[{i + 1}{j + 1}] = 0，实际 {rho[i, j]:.3e}")

    p = rho[1, 1].real
    coherence = rho[0, 2]
    re, im = coherence.real, coherence.imag
    excess = (abs(p + 2.0 * re) + abs(p - re - SQRT3 * im) + abs(p - re + SQRT3 * im)) / 3.0 - p
    return math.log1p(excess)


def mana_closed_form(d: DetectorParams) -> float:
    """
    由探测器参数直接计算的 mana（t̄ = 0，单高斯项）

    令 S = 2T² + 2/α，u = λ²e^{−T²Ω²/2}/(π²S^{3/2})，X = √π T²Ω·erfcx(T²Ω/√S)：
    M = log(1 + u[4X/3 − √S + ⅓|X − (3 − √3T√α)√S/2| + ⅓|X − (3 + √3T√α)√S/2|])

    Raises:
        PreconditionError: t̄ ≠ 0 或多个高斯项
    """
    if d.temporal_centre != 0.0 or not d.is_single_term:
        raise PreconditionError("mana 闭式要求 t̄ = 0 且只有一个高斯项")
    T, omega, lam = d.temporal_width, d.omega, d.coupling
    alpha = d.gauss_terms[0].alpha
    S = 2.0 * T ** 2 + 2.0 / alpha
    root_s = math.sqrt(S)
    u = lam ** 2 * math.exp(-T ** 2 * omega ** 2 / 2.0) / (math.pi ** 2 * S ** 1.5)
    X = math.sqrt(math.pi) * T ** 2 * omega * float(special.erfcx(T ** 2 * omega / root_s))
    shift = SQRT3 * T * math.sqrt(alpha)
    bracket = (4.0 * X / 3.0 - root_s
               + abs(X - (3.0 - shift) * root_s / 2.0) / 3.0
               + abs(X - (3.0 + shift) * root_s / 2.0) / 3.0)
    return math.log1p(u * bracket)
