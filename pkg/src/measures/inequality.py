#!/usr/bin/env python3
"""
五角星非语境不等式 S_C = Σ_i Tr(ρP_i) ≤ 2
ℓ 系数的推导、标定以及与参考表的核对
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import special

from ..common.errors import NumericalError, PreconditionError
from ..detectors.state_assembly import UdwSystem, assemble_single_qutrit
from ..field.detector_params import DetectorParams
from ..linalg.matrix_ops import expect, ground_projector
from ..scenarios.empirical import Scenario

logger = logging.getLogger(__name__)

# 参考表按行打印的 (ℓ₁, ℓ₂)
REFERENCE_TABLE: Dict[int, Tuple[float, float]] = {
    1: (0.390345, 0.445589),
    2: (2.174898, 0.537879),
    3: (0.902216, 0.451108),
}
REFERENCE_REL_TOL = 1e-5

# 布居扰动 ρ₂₂ = +1, ρ₃₃ = −1；相干扰动 Re ρ₁₃ = +1
POPULATION_SHIFT = np.diag([0.0, 1.0, -1.0]).astype(complex)
COHERENCE_SHIFT = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class InequalityCoeffs:
    """ΔS_C 闭式中的 ℓ₁、ℓ₂"""
    ell1: float
    ell2: float

    def __post_init__(self):
        if not (math.isfinite(self.ell1) and math.isfinite(self.ell2)):
            raise NumericalError(f"ℓ 系数非有限: ({self.ell1}, {self.ell2})")

    @property
    def omega_zero_sign(self) -> int:
        """Ω = 0 时 ΔS_C 的符号，即 sign(2ℓ₂ − ℓ₁)"""
        return int(np.sign(2.0 * self.ell2 - self.ell1))

    def as_tuple(self) -> Tuple[float, float]:
        return self.ell1, self.ell2


def s_c(rho: np.ndarray, scen: Scenario) -> float:
    """S_C = Σ_i Tr(ρP_i)"""
    return float(sum(expect(rho, p).real for p in scen.projectors))


def _closed_parts(d: DetectorParams) -> Tuple[float, float, float]:
    if d.temporal_centre != 0.0 or not d.is_single_term:
        raise PreconditionError("ΔS_C 闭式要求 t̄ = 0 且只有一个高斯项")
    T, omega = d.temporal_width, d.omega
    alpha = d.gauss_terms[0].alpha
    S = 2.0 * T ** 2 + 2.0 / alpha
    root_s = math.sqrt(S)
    u = d.coupling ** 2 * math.exp(-T ** 2 * omega ** 2 / 2.0) / (math.pi ** 2 * S ** 1.5)
    X = math.sqrt(math.pi) * T ** 2 * omega * float(special.erfcx(T ** 2 * omega / root_s))
    return u, X, root_s


def delta_s_c_closed(d: DetectorParams, coeffs: InequalityCoeffs) -> float:
    """
    末态与初态不等式左侧之差

    ΔS_C = (u/4)[ℓ₁X − (ℓ₁ − 2ℓ₂)√S]，S = 2T² + 2/α，u = λ²e^{−T²Ω²/2}/(π²S^{3/2})，
    X = √π T²Ω·erfcx(T²Ω/√S)
    """
    u, X, root_s = _closed_parts(d)
    return 0.25 * u * (coeffs.ell1 * X - (coeffs.ell1 - 2.0 * coeffs.ell2) * root_s)


def derive_inequality_coeffs(scen: Scenario) -> InequalityCoeffs:
    """
    由测量算符推导 ℓ 系数：a = Σ Tr(E_pop P_i)，b = Σ Tr(E_coh P_i)，ℓ₁ = −4a，ℓ₂ = −b
    """
    if not scen.has_operators or scen.dim != 3:
        raise PreconditionError("ℓ 系数推导需要 qutrit 测量算符")
    population = sum(expect(POPULATION_SHIFT, p).real for p in scen.projectors)
    coherence = sum(expect(COHERENCE_SHIFT, p).real for p in scen.projectors)
    return InequalityCoeffs(-4.0 * population, -coherence)


def delta_s_c_operator(d: DetectorParams, scen: Scenario) -> float:
    """算符路径：S_C(ρ(t)) − S_C(|g⟩⟨g|)"""
    rho = assemble_single_qutrit(UdwSystem((d,))).rho
    return s_c(rho, scen) - s_c(ground_projector(3), scen)


@dataclass
class CalibrationResult:
    """由两点算符路径反解的 ℓ 系数"""
    coeffs: InequalityCoeffs
    derived: InequalityCoeffs
    max_rel_deviation: float
    is_consistent: bool


def calibrate_inequality_coeffs(scen: Scenario, points: Sequence[DetectorParams],
                                rel_tol: float = 1e-6) -> CalibrationResult:
    """
    在两个 (Ω, T) 点上用算符路径的 ΔS_C 反解 (ℓ₁, ℓ₂)，再与推导值比较

    ΔS_C = (u/4)[ℓ₁(X − √S) + 2ℓ₂√S] 对 ℓ 线性

    Args:
        scen: 五角星场景
        points: 至少两个单项、t̄ = 0 的 qutrit 探测器
        rel_tol: 判定一致的相对容差

    Returns:
        标定结果（不一致时仍返回系数并记录警告）
    """
    if len(points) < 2:
        raise PreconditionError("标定至少需要两个参数点")
    rows, rhs = [], []
    for d in points[:2]:
        u, X, root_s = _closed_parts(d)
        rows.append([0.25 * u * (X - root_s), 0.5 * u * root_s])
        rhs.append(delta_s_c_operator(d, scen))
    try:
        ell1, ell2 = np.linalg.solve(np.array(rows), np.array(rhs))
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"ℓ 标定方程奇异: {e}") from e

    calibrated = InequalityCoeffs(float(ell1), float(ell2))
    derived = derive_inequality_coeffs(scen)
    scale = max(abs(derived.ell1), abs(derived.ell2))
    deviation = max(abs(calibrated.ell1 - derived.ell1), abs(calibrated.ell2 - derived.ell2)) / scale
    consistent = deviation <= rel_tol
    if not consistent:
        logger.warning(f"⚠️ ℓ 标定与推导不一致: 相对偏差 {deviation:.3e}")
    return CalibrationResult(calibrated, derived, deviation, consistent)


@dataclass
class ReferenceTableReport:
    """推导系数与参考表的核对结果"""
    is_valid: bool
    issues: List[str]
    warnings: List[str]
    matches: Dict[int, int] = field(default_factory=dict)
    derived: Dict[int, Tuple[float, float]] = field(default_factory=dict)
    quality_score: float = 100.0

    @property
    def swapped_rows(self) -> List[Tuple[int, int]]:
        return [(s, r) for s, r in self.matches.items() if r != s]


def _relative_match(a: Tuple[float, float], b: Tuple[float, float], rel_tol: float) -> bool:
    return all(abs(x - y) <= rel_tol * abs(y) for x, y in zip(a, b))


def reconcile_reference_table(derived: Dict[int, InequalityCoeffs],
                              rel_tol: float = REFERENCE_REL_TOL) -> ReferenceTableReport:
    """
    把每个角度组的推导系数与参考表逐行比对

    找到的行与角度组编号不同时记为警告（行标签互换），
    找不到任何匹配行时记为问题；从不抛出异常
    """
    issues: List[str] = []
    warnings: List[str] = []
    matches: Dict[int, int] = {}

    for set_id, coeffs in sorted(derived.items()):
        values = coeffs.as_tuple()
        row = next((r for r, ref in REFERENCE_TABLE.items() if _relative_match(values, ref, rel_tol)), None)
        if row is None:
            issues.append(f"角度组 {set_id}: ({values[0]:.6f}, {values[1]:.6f}) 不匹配参考表任何一行")
        elif row != set_id:
            matches[set_id] = row
            warnings.append(f"角度组 {set_id}: 系数与参考表第 {row} 行一致（行标签互换）")
        else:
            matches[set_id] = row

    for message in warnings:
        logger.warning(f"⚠️ {message}")
    return ReferenceTableReport(
        is_valid=not issues,
        issues=issues,
        warnings=warnings,
        matches=matches,
        derived={k: v.as_tuple() for k, v in derived.items()},
        quality_score=max(0.0, 100.0 - 30.0 * len(issues) - 5.0 * len(warnings)),
    )
