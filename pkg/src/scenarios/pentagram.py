#!/usr/bin/env python3
"""
qutrit 五角星场景
由角度参数构造五个秩一投影算符，使语境内测量对易、基态恰好饱和非语境不等式
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from ..common.errors import ConfigurationError, ScenarioConstructionError, ScenarioDomainError
from ..linalg.matrix_ops import ground_projector, max_abs
from .empirical import Context, Scenario

logger = logging.getLogger(__name__)

PENTAGRAM_CONTEXTS: Tuple[Context, ...] = ((0, 2), (0, 3), (1, 3), (1, 4), (2, 4))
# 基态饱和值（独立数）
GROUND_BOUND = 2.0

CONTEXT_COMMUTATOR_TOL = 1e-9
NON_CONTEXT_COMMUTATOR_MIN = 1e-3
IDEMPOTENCY_TOL = 1e-10
GROUND_SUM_TOL = 1e-6
CROSS_TERM_TOL = 1e-9
ARCCOS_SLACK = 1e-12


def kcbs_cycle_contexts() -> Tuple[Context, ...]:
    """五元环语境 (0,1),(1,2),(2,3),(3,4),(4,0)"""
    return tuple((i, (i + 1) % 5) for i in range(5))


def projector_from_angles(alpha: float, theta: float) -> np.ndarray:
    """|v⟩⟨v|，v = (sinα cosθ, cosα, sinα sinθ)，基矢顺序 (|1⟩, |0⟩, |−1⟩)"""
    v = np.array([math.sin(alpha) * math.cos(theta), math.cos(alpha), math.sin(alpha) * math.sin(theta)])
    return np.outer(v, v).astype(complex)


def phi(alpha_i: float, alpha_j: float) -> float:
    """
    φ_ij = arccos(−cot α_i cot α_j)，使 v_i ⊥ v_j 的方位角差

    Raises:
        ScenarioDomainError: 反余弦参数超出 [−1, 1]
    """
    argument = -(math.cos(alpha_i) / math.sin(alpha_i)) * (math.cos(alpha_j) / math.sin(alpha_j))
    if abs(argument) > 1.0 + ARCCOS_SLACK:
        raise ScenarioDomainError(f"arccos 参数超出定义域: {argument:.6g} (α={alpha_i:.6g}, {alpha_j:.6g})")
    return math.acos(max(-1.0, min(1.0, argument)))


def solve_alpha3(alpha0: float, alpha1: float, phi24: float, phi02: float, phi14: float) -> float:
    """
    由闭合条件 φ₀₃ + φ₁₃ = φ₀₂ + φ₂₄ − φ₁₄ 求 α₃

    cot α₃ = tanα₀ tanα₁ sinΦ / √(tan²α₀ + tan²α₁ − 2 tanα₀ tanα₁ cosΦ)，Φ = φ₂₄ + φ₀₂ − φ₁₄

    Returns:
        α₃ ∈ (0, π)

    Raises:
        ScenarioDomainError: 根号内非正
    """
    closure = phi24 + phi02 - phi14
    t0, t1 = math.tan(alpha0), math.tan(alpha1)
    radicand = t0 ** 2 + t1 ** 2 - 2.0 * t0 * t1 * math.cos(closure)
    if not radicand > 0:
        raise ScenarioDomainError(f"α₃ 求解失败: 根号内为 {radicand:.6g}")
    cot_alpha3 = t0 * t1 * math.sin(closure) / math.sqrt(radicand)
    return math.atan2(1.0, cot_alpha3)


def _theta_chain(theta0: float, alphas: Sequence[float]) -> Tuple[float, ...]:
    """θ = {θ₀, θ₀−φ₀₃−φ₁₃, θ₀−φ₀₂, θ₀−φ₀₃, θ₀−φ₂₄−φ₀₂}"""
    a = alphas
    phi02, phi03 = phi(a[0], a[2]), phi(a[0], a[3])
    return (
        theta0,
        theta0 - phi03 - phi(a[1], a[3]),
        theta0 - phi02,
        theta0 - phi03,
        theta0 - phi(a[2], a[4]) - phi02,
    )


@dataclass(frozen=True)
class AngleSet:
    """五个投影算符的角度参数"""
    theta0: float
    alphas: Tuple[float, ...]
    thetas: Tuple[float, ...]
    alpha3_derived: bool = False

    @classmethod
    def from_printed(cls, theta0: float, alpha0: float, alpha1: float, alpha2: float,
                     alpha4: float) -> "AngleSet":
        """给定 θ₀ 与 α₀,α₁,α₂,α₄，推导 α₃ 与 θ 链"""
        alpha3 = solve_alpha3(alpha0, alpha1, phi(alpha2, alpha4), phi(alpha0, alpha2), phi(alpha1, alpha4))
        alphas = (alpha0, alpha1, alpha2, alpha3, alpha4)
        return cls(theta0, alphas, _theta_chain(theta0, alphas), alpha3_derived=True)

    @classmethod
    def custom(cls, theta0: float, alphas: Sequence[float]) -> "AngleSet":
        """五个 α 全部按给定值使用"""
        alphas = tuple(float(a) for a in alphas)
        if len(alphas) != 5:
            raise ScenarioDomainError(f"需要 5 个 α，收到 {len(alphas)}")
        return cls(theta0, alphas, _theta_chain(theta0, alphas))

    def perturbed(self, index: int, delta: float) -> "AngleSet":
        alphas = list(self.alphas)
        alphas[index] += delta
        return AngleSet.custom(self.theta0, alphas)

    @property
    def ground_sum(self) -> float:
        """Σ sin²α_i sin²θ_i = Σ⟨−1|P_i|−1⟩"""
        return math.fsum(math.sin(a) ** 2 * math.sin(t) ** 2 for a, t in zip(self.alphas, self.thetas))

    @property
    def cross_term(self) -> float:
        """½Σ sin²α_i sin 2θ_i，须 ≤ 0"""
        return 0.5 * math.fsum(math.sin(a) ** 2 * math.sin(2 * t) for a, t in zip(self.alphas, self.thetas))

    def reduced_alphas(self) -> Tuple[float, ...]:
        """α mod 2π"""
        return tuple(math.fmod(a, 2 * math.pi) for a in self.alphas)


def _printed_angle_sets() -> Dict[int, AngleSet]:
    pi = math.pi
    alpha4 = 0.54722012035572493 * pi
    return {
        # Ω = 0 时不等式左侧差值为正
        1: AngleSet.from_printed(3 * pi / 4, 0.9 * pi, 2.9 * pi, pi / 2, alpha4),
        # Ω = 0 时无收获
        2: AngleSet.from_printed(0.71549033656902731395587677242763007306802049110217 * pi,
                                 0.9 * pi, 2.83737665013 * pi, pi / 2, alpha4),
        # Ω = 0 时差值为负
        3: AngleSet.from_printed(17 * pi / 20, 0.83999268322 * pi, 3 * pi / 4, pi / 2, pi / 2),
    }


PENTAGRAM_ANGLE_SETS: Dict[int, AngleSet] = _printed_angle_sets()


def get_angle_set(set_id: int) -> AngleSet:
    try:
        return PENTAGRAM_ANGLE_SETS[int(set_id)]
    except (KeyError, ValueError, TypeError):
        raise ConfigurationError(f"未知角度组: {set_id}，可选 {sorted(PENTAGRAM_ANGLE_SETS)}") from None


def _scenario_from_angles(angles: AngleSet, name: str) -> Scenario:
    projectors = tuple(projector_from_angles(a, t) for a, t in zip(angles.alphas, angles.thetas))
    return Scenario(5, PENTAGRAM_CONTEXTS, projectors, name)


@dataclass
class ScenarioReport:
    """五角星场景检查报告"""
    name: str
    is_valid: bool
    issues: List[str]
    warnings: List[str]
    context_commutators: Dict[Context, float] = field(default_factory=dict)
    non_context_commutators: Dict[Context, float] = field(default_factory=dict)
    idempotency: float = 0.0
    ground_sum: float = 0.0
    cross_term: float = 0.0
    reduced_alphas: Tuple[float, ...] = ()
    quality_score: float = 100.0

    @property
    def failed_constraint(self) -> str:
        return self.issues[0].split(":")[0] if self.issues else ""


def inspect_scenario(angles: AngleSet, name: str = "custom") -> ScenarioReport:
    """按约束逐项检查角度组，只报告不抛出"""
    try:
        scen = _scenario_from_angles(angles, name)
    except ScenarioDomainError as e:
        return ScenarioReport(name, False, [f"domain: {e}"], [], quality_score=0.0)

    issues: List[str] = []
    warnings: List[str] = []

    context_norms = {c: scen.commutator_norm(*c) for c in scen.contexts}
    non_context_norms = {c: scen.commutator_norm(*c) for c in scen.non_contexts()}
    idempotency = max(max(max_abs(p @ p - p), max_abs(p - p.conj().T)) for p in scen.projectors)
    ground = ground_projector(3)
    ground_sum = float(sum(np.trace(ground @ p).real for p in scen.projectors))

    for context, norm in context_norms.items():
        if norm > CONTEXT_COMMUTATOR_TOL:
            issues.append(f"context_commutator: 语境 {context} 不对易 ({norm:.3e})")
    for context, norm in non_context_norms.items():
        if norm < NON_CONTEXT_COMMUTATOR_MIN:
            issues.append(f"non_context_commutator: 非语境 {context} 近似对易 ({norm:.3e})")
    if idempotency > IDEMPOTENCY_TOL:
        issues.append(f"idempotency: 投影算符偏离幂等/厄米 {idempotency:.3e}")
    if abs(ground_sum - GROUND_BOUND) > GROUND_SUM_TOL:
        issues.append(f"ground_sum: 基态求和 {ground_sum:.12g} ≠ {GROUND_BOUND}")
    if angles.cross_term > CROSS_TERM_TOL:
        issues.append(f"cross_term: 交叉项 {angles.cross_term:.3e} > 0")

    reduced = angles.reduced_alphas()
    for index, (raw, folded) in enumerate(zip(angles.alphas, reduced)):
        if raw != folded:
            warnings.append(f"α{index} = {raw:.12g} 超出 [0, 2π)，等价于 {folded:.12g}")

    return ScenarioReport(
        name=name,
        is_valid=not issues,
        issues=issues,
        warnings=warnings,
        context_commutators=context_norms,
        non_context_commutators=non_context_norms,
        idempotency=idempotency,
        ground_sum=ground_sum,
        cross_term=angles.cross_term,
        reduced_alphas=reduced,
        quality_score=max(0.0, 100.0 - 20.0 * len(issues)),
    )


def check_scenario(set_id: int) -> ScenarioReport:
    """预设角度组的检查报告"""
    return inspect_scenario(get_angle_set(set_id), f"pentagram-{int(set_id)}")


def build_pentagram(angles: Union[int, AngleSet]) -> Scenario:
    """
    构造五角星场景

    Args:
        angles: 预设编号 1/2/3 或自定义角度组

    Returns:
        满足全部约束的场景

    Raises:
        ScenarioConstructionError: 约束不满足，constraint 指明失败项
    """
    if isinstance(angles, AngleSet):
        name = "pentagram-custom"
    else:
        name = f"pentagram-{int(angles)}"
        angles = get_angle_set(angles)

    report = inspect_scenario(angles, name)
    if not report.is_valid:
        raise ScenarioConstructionError(f"{name} 构造失败: {report.issues[0]}", report.failed_constraint)
    logger.debug(f"五角星场景 {name}: 基态求和 {report.ground_sum:.12f}")
    return _scenario_from_angles(angles, name)
