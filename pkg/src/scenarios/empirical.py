#!/usr/bin/env python3
"""
测量场景与经验模型
场景 (X, C, O)、联合概率表、关联矩阵以及经验模型质量检查
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import DimensionMismatchError, InvalidStateError, ScenarioDomainError
from ..linalg.matrix_ops import commutator, max_abs

logger = logging.getLogger(__name__)

OUTCOMES = (-1, 1)
# 每个语境内的联合结果顺序
OUTCOME_PAIRS: Tuple[Tuple[int, int], ...] = ((-1, -1), (-1, 1), (1, -1), (1, 1))

Context = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    二值测量场景

    projectors[i] 对应测量 i 的 −1 结果；B_i = I − 2P_i。
    外部导入的模型只需要测量数和语境，projectors 可以为空。
    """
    n_measurements: int
    contexts: Tuple[Context, ...]
    projectors: Tuple[np.ndarray, ...] = ()
    name: str = ""

    def __post_init__(self):
        contexts = tuple((int(i), int(j)) for i, j in self.contexts)
        object.__setattr__(self, 'contexts', contexts)
        object.__setattr__(self, 'projectors', tuple(np.asarray(p, dtype=complex) for p in self.projectors))
        if self.n_measurements < 2:
            raise ScenarioDomainError(f"测量数至少为 2: {self.n_measurements}")
        for i, j in contexts:
            if i == j or not (0 <= i < self.n_measurements and 0 <= j < self.n_measurements):
                raise ScenarioDomainError(f"非法语境 ({i}, {j})")
        if self.projectors and len(self.projectors) != self.n_measurements:
            raise DimensionMismatchError(f"投影算符数 {len(self.projectors)} 与测量数 {self.n_measurements} 不一致")

    @property
    def has_operators(self) -> bool:
        return bool(self.projectors)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0] if self.projectors else 0

    def measurement_operator(self, index: int) -> np.ndarray:
        """B_i = I − 2P_i"""
        projector = self.projectors[index]
        return np.eye(projector.shape[0], dtype=complex) - 2.0 * projector

    def commutator_norm(self, i: int, j: int) -> float:
        return max_abs(commutator(self.measurement_operator(i), self.measurement_operator(j)))

    def non_contexts(self) -> List[Context]:
        members = set(self.contexts) | {(j, i) for i, j in self.contexts}
        return [(i, j) for i in range(self.n_measurements) for j in range(i + 1, self.n_measurements)
                if (i, j) not in members]

    def rotated(self, unitary: np.ndarray) -> "Scenario":
        """P → U P U†，与态的自由演化配合使用"""
        adjoint = unitary.conj().T
        projectors = tuple(unitary @ p @ adjoint for p in self.projectors)
        return Scenario(self.n_measurements, self.contexts, projectors, self.name)


@dataclass
class EmpiricalModel:
    """每个语境一行的联合概率表，列顺序见 OUTCOME_PAIRS"""
    scenario_id: str
    n_measurements: int
    contexts: Tuple[Context, ...]
    table: np.ndarray

    def __post_init__(self):
        self.contexts = tuple((int(i), int(j)) for i, j in self.contexts)
        self.table = np.asarray(self.table, dtype=float)
        if self.table.shape != (len(self.contexts), len(OUTCOME_PAIRS)):
            raise DimensionMismatchError(
                f"概率表形状 {self.table.shape} 与语境数 {len(self.contexts)} 不一致")

    def to_vector(self) -> np.ndarray:
        """按语境顺序、结果顺序展开的 v^e"""
        return self.table.reshape(-1)

    def marginal(self, context_index: int, measurement: int) -> np.ndarray:
        """语境内某个测量的边缘分布 (p(−1), p(+1))"""
        i, j = self.contexts[context_index]
        row = self.table[context_index]
        if measurement == i:
            return np.array([row[0] + row[1], row[2] + row[3]])
        if measurement == j:
            return np.array([row[0] + row[2], row[1] + row[3]])
        raise ScenarioDomainError(f"测量 {measurement} 不在语境 {self.contexts[context_index]} 中")

    def mix(self, other: "EmpiricalModel", weight: float) -> "EmpiricalModel":
        """凸组合 weight·self + (1 − weight)·other"""
        if self.contexts != other.contexts:
            raise DimensionMismatchError("凸组合要求相同的语境列表")
        table = weight * self.table + (1.0 - weight) * other.table
        return EmpiricalModel(self.scenario_id, self.n_measurements, self.contexts, table)


@dataclass
class IncidenceMatrix:
    """M[(C,s), g] = 1 当且仅当全局赋值 g 限制到 C 上等于 s"""
    rows: int
    cols: int
    bits: np.ndarray

    def as_float(self) -> np.ndarray:
        return self.bits.astype(float)


def empirical_model(rho: np.ndarray, scen: Scenario, drift_tol: float = 1e-12) -> EmpiricalModel:
    """
    由态和场景生成经验模型：p(a, b) = Tr(ρ Π_i^a Π_j^b)，Π^{−1} = P，Π^{+1} = I − P

    Args:
        rho: 3×3 密度矩阵
        scen: 带投影算符的场景
        drift_tol: 行和偏离 1 不超过该值时做归一化

    Returns:
        经验模型

    Raises:
        InvalidStateError: 概率低于 −1e-10
    """
    if not scen.has_operators:
        raise ScenarioDomainError("场景没有测量算符，无法由态生成经验模型")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (scen.dim, scen.dim):
        raise DimensionMismatchError(f"态维度 {rho.shape} 与场景维度 {scen.dim} 不一致")

    identity = np.eye(scen.dim, dtype=complex)
    table = np.zeros((len(scen.contexts), len(OUTCOME_PAIRS)))
    for row, (i, j) in enumerate(scen.contexts):
        effects = {}
        for index in (i, j):
            projector = scen.projectors[index]
            effects[index] = {-1: projector, 1: identity - projector}
        for col, (a, b) in enumerate(OUTCOME_PAIRS):
            value = np.trace(rho @ effects[i][a] @ effects[j][b])
            table[row, col] = value.real
        if table[row].min() < -1e-10:
            raise InvalidStateError(f"语境 ({i}, {j}) 出现负概率 {table[row].min():.3e}")
        drift = abs(table[row].sum() - 1.0)
        if 0.0 < drift <= drift_tol:
            table[row] /= table[row].sum()

    return EmpiricalModel(scen.name, scen.n_measurements, scen.contexts, table)


def incidence(scen: Scenario) -> IncidenceMatrix:
    """
    关联矩阵：全局赋值 g ∈ [0, 2ⁿ)，第 i 位为 0 表示测量 i 取 −1；
    行按语境顺序再按结果顺序排列
    """
    n = scen.n_measurements
    cols = 2 ** n
    rows = len(scen.contexts) * len(OUTCOME_PAIRS)
    bits = np.zeros((rows, cols), dtype=np.uint8)
    for g in range(cols):
        for c, (i, j) in enumerate(scen.contexts):
            local = 2 * ((g >> i) & 1) + ((g >> j) & 1)
            bits[4 * c + local, g] = 1
    return IncidenceMatrix(rows, cols, bits)


def deterministic_model(scen: Scenario, assignment: int) -> EmpiricalModel:
    """全局赋值 assignment 对应的确定性模型"""
    column = incidence(scen).bits[:, assignment].astype(float)
    return EmpiricalModel(f"{scen.name}:g{assignment}", scen.n_measurements, scen.contexts,
                          column.reshape(len(scen.contexts), len(OUTCOME_PAIRS)))


@dataclass
class ModelQualityReport:
    """经验模型质量报告"""
    is_valid: bool
    issues: List[str]
    warnings: List[str]
    row_sums: List[float]
    min_entry: float
    max_marginal_mismatch: float
    quality_score: float  # 0-100分


class ModelQualityChecker:
    """经验模型检查器：归一化、非负性与无信号条件"""

    def __init__(self, normalization_tol: float = 1e-10, negativity_tol: float = 1e-12,
                 signalling_tol: float = 1e-9):
        self.logger = logging.getLogger(__name__)
        self.normalization_tol = normalization_tol
        self.negativity_tol = negativity_tol
        self.signalling_tol = signalling_tol

    def validate(self, model: EmpiricalModel) -> ModelQualityReport:
        """
        检查经验模型

        Args:
            model: 经验模型

        Returns:
            质量报告（从不抛出异常）
        """
        issues: List[str] = []
        warnings: List[str] = []
        quality_score = 100.0

        if model.table.size == 0:
            return ModelQualityReport(False, ["概率表为空"], [], [], 0.0, 0.0, 0.0)

        row_sums = [float(s) for s in model.table.sum(axis=1)]
        normalization_issues = self._check_normalization(model, row_sums)
        issues.extend(normalization_issues)
        quality_score -= len(normalization_issues) * 20

        negativity_issues = self._check_negativity(model)
        issues.extend(negativity_issues)
        quality_score -= len(negativity_issues) * 10

        signalling_issues, mismatch = self._check_no_signalling(model)
        issues.extend(signalling_issues)
        quality_score -= len(signalling_issues) * 15

        if mismatch > 0.1 * self.signalling_tol and not signalling_issues:
            warnings.append(f"边缘分布差异接近容差: {mismatch:.3e}")

        quality_score = max(0.0, quality_score)
        is_valid = not issues
        if not is_valid:
            self.logger.warning(f"⚠️ 经验模型 {model.scenario_id} 未通过检查: {len(issues)} 个问题")

        return ModelQualityReport(
            is_valid=is_valid,
            issues=issues,
            warnings=warnings,
            row_sums=row_sums,
            min_entry=float(model.table.min()),
            max_marginal_mismatch=mismatch,
            quality_score=quality_score,
        )

    def _check_normalization(self, model: EmpiricalModel, row_sums: Sequence[float]) -> List[str]:
        issues = []
        for context, total in zip(model.contexts, row_sums):
            if abs(total - 1.0) > self.normalization_tol:
                issues.append(f"语境 {context}: 概率和为 {total:.12g}")
        return issues

    def _check_negativity(self, model: EmpiricalModel) -> List[str]:
        issues = []
        for context, row in zip(model.contexts, model.table):
            if row.min() < -self.negativity_tol:
                issues.append(f"语境 {context}: 存在负概率 {row.min():.3e}")
        return issues

    def _check_no_signalling(self, model: EmpiricalModel) -> Tuple[List[str], float]:
        """重叠测量在不同语境中的边缘分布必须一致"""
        issues = []
        marginals: Dict[int, List[Tuple[int, np.ndarray]]] = {}
        for index, (i, j) in enumerate(model.contexts):
            for measurement in (i, j):
                marginals.setdefault(measurement, []).append((index, model.marginal(index, measurement)))

        worst = 0.0
        for measurement, entries in sorted(marginals.items()):
            reference_index, reference = entries[0]
            for index, marginal in entries[1:]:
                mismatch = float(np.max(np.abs(marginal - reference)))
                worst = max(worst, mismatch)
                if mismatch > self.signalling_tol:
                    issues.append(f"测量 {measurement}: 语境 {model.contexts[reference_index]} 与 "
                                  f"{model.contexts[index]} 的边缘分布相差 {mismatch:.3e}")
        return issues, worst


_checker = ModelQualityChecker()


def validate_model(model: EmpiricalModel, checker: Optional[ModelQualityChecker] = None) -> ModelQualityReport:
    """经验模型检查，只报告不抛出"""
    return (checker or _checker).validate(model)
