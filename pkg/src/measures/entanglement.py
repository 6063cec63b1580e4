#!/usr/bin/env python3
"""
qubit-qutrit 负性
特征值法与二阶闭式两种途径

部分转置矩阵按非零元连通性分解成互不耦合的主子块逐块求特征值，
O(λ²) 量级的子块因此保持相对精度。含 ρ₆₆ ≈ 1 的子块只贡献
−(2|W₁₂|² + |r₄₆|²) 量级的负特征值，属于 O(λ⁴) 截断误差，
扫描中的负性列只取 O(λ²) 子块
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..field.detector_params import PLUS_PLUS, PropagatorKind, PropagatorSet, SignPair
from ..linalg.matrix_ops import BipartiteShape, Subsystem, decoupled_blocks, eig_hermitian, partial_transpose

logger = logging.getLogger(__name__)

EXCITATION = SignPair(1, -1)


@dataclass(frozen=True)
class BlockNegativity:
    """部分转置的一个不耦合子块"""
    indices: Tuple[int, ...]
    negativity: float
    spectral_norm: float


def negativity_blocks(rho: np.ndarray, shape: BipartiteShape,
                      subsystem: Subsystem = Subsystem.A) -> List[BlockNegativity]:
    """部分转置逐块的负特征值之和及谱范数"""
    pt = partial_transpose(rho, shape, subsystem)
    blocks = []
    for indices in decoupled_blocks(pt):
        eigenvalues = eig_hermitian(pt[np.ix_(indices, indices)])
        blocks.append(BlockNegativity(
            indices=tuple(int(i) for i in indices),
            negativity=float(-math.fsum(v for v in eigenvalues if v < 0.0)),
            spectral_norm=max(abs(v) for v in eigenvalues),
        ))
    return blocks


def negativity(rho: np.ndarray, shape: BipartiteShape, subsystem: Subsystem = Subsystem.A) -> float:
    """
    N(ρ) = Σ|负特征值|，对任一子系统做部分转置结果相同

    Args:
        rho: 联合密度矩阵
        shape: 两个子系统的维度
        subsystem: 转置的子系统

    Returns:
        负性
    """
    return math.fsum(block.negativity for block in negativity_blocks(rho, shape, subsystem))


def _closed_scalars(props: PropagatorSet):
    w11 = props.get("11", EXCITATION, PropagatorKind.WIGHTMAN).real
    w22 = props.get("22", EXCITATION, PropagatorKind.WIGHTMAN).real
    w12 = props.get("12", EXCITATION, PropagatorKind.WIGHTMAN)
    w21 = props.get("21", EXCITATION, PropagatorKind.WIGHTMAN)
    r46 = -2.0 * props.get("22", PLUS_PLUS, PropagatorKind.WIGHTMAN_FWD)
    r62 = -math.sqrt(2.0) * np.conj(props.get("21", PLUS_PLUS, PropagatorKind.FEYNMAN))
    return w11, w22, w12, w21, r46, r62


def negativity_closed(props: PropagatorSet) -> float:
    """
    部分转置矩阵的两个非平凡块给出的二阶负性

    N = ½|Σ min(0, r₆₆ ± √(r₆₆² + 8W₂₁W₁₂ + 4|r₄₆|²)) + Σ min(0, W₁₁ + 2W₂₂ ± √((W₁₁ − 2W₂₂)² + 4|r₆₂|²))|，
    r₆₆ = 1 − W₁₁ − 2W₂₂

    Raises:
        MissingScalarError: 缺少 W^{+−}、W̄^{++}_{22} 或 G^{++}_{21}
    """
    w11, w22, w12, w21, r46, r62 = _closed_scalars(props)
    r66 = 1.0 - w11 - 2.0 * w22
    coupling = (8.0 * w21 * w12).real + 4.0 * abs(r46) ** 2
    root = math.sqrt(r66 ** 2 + coupling)
    # r₆₆ − √(r₆₆² + ε) 的抵消形式
    small_root = -coupling / (r66 + root) if r66 > 0 else r66 - root

    local = w11 + 2.0 * w22
    spread = math.sqrt((w11 - 2.0 * w22) ** 2 + 4.0 * abs(r62) ** 2)
    terms = (min(0.0, r66 + root), min(0.0, small_root), min(0.0, local + spread), min(0.0, local - spread))
    return 0.5 * abs(math.fsum(terms))


def negativity_simplified(props: PropagatorSet) -> float:
    """
    各矩阵元远小于 1、参数相同且 λ₁ = √2λ₂ 时的近似负性

    |min(0, −½(W₂₂² + 8W₂₁W₁₂ + 4|r₄₆|²)) + min(0, |r₆₂| + W₂₂) + min(0, W₂₂ − |r₆₂|)|
    """
    _, w22, w12, w21, r46, r62 = _closed_scalars(props)
    first = -0.5 * (w22 ** 2 + (8.0 * w21 * w12).real + 4.0 * abs(r46) ** 2)
    return abs(min(0.0, first) + min(0.0, abs(r62) + w22) + min(0.0, w22 - abs(r62)))


def negativity_second_order(props: PropagatorSet) -> float:
    """
    只保留 O(λ²) 子块 [[W₁₁, r₆₂], [r₆₂*, 2W₂₂]] 的负性

    N₂ = 2·max(0, |r₆₂|² − 2W₁₁W₂₂)/(W₁₁ + 2W₂₂ + √((W₁₁ − 2W₂₂)² + 4|r₆₂|²))

    Raises:
        MissingScalarError: 缺少 W^{+−} 或 G^{++}_{21}
    """
    w11, w22, _, _, _, r62 = _closed_scalars(props)
    excess = abs(r62) ** 2 - 2.0 * w11 * w22
    if excess <= 0.0:
        return 0.0
    local = w11 + 2.0 * w22
    spread = math.sqrt((w11 - 2.0 * w22) ** 2 + 4.0 * abs(r62) ** 2)
    return 2.0 * excess / (local + spread)
