#!/usr/bin/env python3
"""
语境分数
NCF(e) = max 1·b，s.t. M b ≤ v^e，b ≥ 0；CF = 1 − NCF
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..common.errors import InvalidStateError, LpNumericalTrouble
from ..scenarios.empirical import (
    OUTCOME_PAIRS,
    EmpiricalModel,
    IncidenceMatrix,
    Scenario,
    empirical_model,
    incidence,
)
from ..scenarios.model_io import scenario_of
from .simplex import LpProblem, LpSolution, LpStatus, SimplexSolver

logger = logging.getLogger(__name__)

_solver = SimplexSolver()


def solve_ncf(M: IncidenceMatrix, v: np.ndarray, solver: Optional[SimplexSolver] = None) -> LpSolution:
    """
    非语境分数线性规划

    Args:
        M: 关联矩阵
        v: 经验模型展开向量 v^e

    Returns:
        LpSolution，objective_value 即 NCF

    Raises:
        LpNumericalTrouble: 迭代耗尽或最优性证书不成立
    """
    problem = LpProblem(np.ones(M.cols), M.as_float(), v)
    solution = (solver or _solver).solve(problem)
    if solution.status == LpStatus.NUMERICAL_TROUBLE:
        raise LpNumericalTrouble(f"NCF 线性规划数值失败: {solution.message}")
    return solution


def contextual_fraction(model: EmpiricalModel, scen: Optional[Scenario] = None) -> float:
    """
    CF = 1 − NCF，不做截断

    Raises:
        InvalidStateError: 概率表含显著负值导致不可行
    """
    scen = scen or scenario_of(model)
    solution = solve_ncf(incidence(scen), model.to_vector())
    if solution.status == LpStatus.INFEASIBLE:
        raise InvalidStateError(f"经验模型 {model.scenario_id} 的 LP 不可行: {solution.message}")
    return 1.0 - solution.objective_value


def delta_cf(rho_t: np.ndarray, rho_0: np.ndarray, scen: Scenario) -> float:
    """ΔCF = CF(v^e_t) − CF(v^e_{t₀})"""
    cf_t = contextual_fraction(empirical_model(rho_t, scen), scen)
    cf_0 = contextual_fraction(empirical_model(rho_0, scen), scen)
    return cf_t - cf_0


def anti_correlation_coefficients(n_contexts: int) -> np.ndarray:
    """每个语境对 (−1,+1)、(+1,−1) 取 ½ 的泛函系数，按 v^e 顺序展开"""
    row = np.array([0.5 if a != b else 0.0 for a, b in OUTCOME_PAIRS])
    return np.tile(row, n_contexts)


@dataclass(frozen=True)
class InequalityBounds:
    """非语境上界 R 与代数最大值 S_max"""
    noncontextual: float
    algebraic: float


def inequality_bounds(scen: Scenario, coefficients: Optional[np.ndarray] = None) -> InequalityBounds:
    """R = max_g α·M[:, g]，S_max = Σ_C max_s α(C, s)"""
    if coefficients is None:
        coefficients = anti_correlation_coefficients(len(scen.contexts))
    M = incidence(scen).as_float()
    noncontextual = float(np.max(coefficients @ M))
    algebraic = float(coefficients.reshape(len(scen.contexts), -1).max(axis=1).sum())
    return InequalityBounds(noncontextual, algebraic)


def normalized_violation(model: EmpiricalModel, scen: Optional[Scenario] = None) -> float:
    """
    max(0, I(e) − R)/(S_max − R)

    语境内投影正交时 I(e) = Σ_i Tr(ρP_i)；五角星上 R = 2，S_max = 5/2
    """
    scen = scen or scenario_of(model)
    coefficients = anti_correlation_coefficients(len(scen.contexts))
    bounds = inequality_bounds(scen, coefficients)
    value = float(coefficients @ model.to_vector())
    if bounds.algebraic <= bounds.noncontextual:
        return 0.0
    return max(0.0, value - bounds.noncontextual) / (bounds.algebraic - bounds.noncontextual)


def fraction_pair(rho: np.ndarray, scen: Scenario) -> Tuple[float, float]:
    """(CF, 归一化违背) 一次生成经验模型后同时计算"""
    model = empirical_model(rho, scen)
    return contextual_fraction(model, scen), normalized_violation(model, scen)
