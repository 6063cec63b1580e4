#!/usr/bin/env python3
"""
真收获判据
|Δ(Λ⁺,Λ⁺)/H(Λ⁺,Λ⁺)| ≤ 阈值 且 ΔCF > 0
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

from ..field.detector_params import PLUS_PLUS, DetectorParams
from ..field.propagators import hadamard, symmetric
from ..utils.config import harvest_config

logger = logging.getLogger(__name__)

HADAMARD_FLOOR = 1e-300


@dataclass(frozen=True)
class HarvestVerdict:
    """收获判定"""
    ratio: float
    delta_cf: float
    threshold: float
    genuine: bool
    abs_symmetric: float = float('nan')
    abs_hadamard: float = float('nan')

    @staticmethod
    def decide(ratio: float, delta_cf: float, threshold: float) -> bool:
        return ratio <= threshold and delta_cf > 0.0


def harvest_verdict(d: DetectorParams, d2: DetectorParams, delta_cf: float,
                    threshold: Optional[float] = None, same_system: Optional[bool] = None) -> HarvestVerdict:
    """
    比较对称传播子与 Hadamard 函数，判定语境性是否来自真空关联

    Args:
        d: 第一个探测器
        d2: 第二个探测器
        delta_cf: 语境分数差
        threshold: "≪ 1" 的量化阈值（默认取配置）
        same_system: 是否同一探测器（默认按参数是否相同判断）

    Returns:
        HarvestVerdict；|H| ≤ 1e-300 时比值为 +∞ 且不计为真收获
    """
    threshold = harvest_config.harvest_threshold if threshold is None else threshold
    same_system = (d == d2) if same_system is None else same_system

    abs_symmetric = abs(symmetric(d, d2, PLUS_PLUS, same_system))
    abs_hadamard = abs(hadamard(d, d2, PLUS_PLUS, same_system))
    if abs_hadamard <= HADAMARD_FLOOR:
        logger.debug("Hadamard 函数为零，比值记为无穷大")
        return HarvestVerdict(math.inf, delta_cf, threshold, False, abs_symmetric, abs_hadamard)

    ratio = abs_symmetric / abs_hadamard
    return HarvestVerdict(ratio, delta_cf, threshold, HarvestVerdict.decide(ratio, delta_cf, threshold),
                          abs_symmetric, abs_hadamard)
