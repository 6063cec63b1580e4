#!/usr/bin/env python3
"""
稠密表格单纯形法
求解 max c·x，s.t. A x ≤ v，x ≥ 0（v ≥ 0，松弛变量构成初始可行基），
Bland 规则防止退化循环；原始阶段结束后由最优基重算基解，
若舍入使基变量为负则用对偶单纯形恢复可行，最后回代对偶解做最优性证书
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from ..common.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

RHS_NEGATIVE_SLACK = 1e-12
MACHINE_EPS = float(np.finfo(float).eps)


class LpStatus(Enum):
    """求解状态"""
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    NUMERICAL_TROUBLE = "NumericalTrouble"


@dataclass
class LpProblem:
    """max objective·x，s.t. constraint_matrix·x ≤ rhs，x ≥ 0"""
    objective: np.ndarray
    constraint_matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        self.constraint_matrix = np.asarray(self.constraint_matrix, dtype=float)
        self.rhs = np.asarray(self.rhs, dtype=float)
        m, n = self.constraint_matrix.shape
        if self.objective.shape != (n,) or self.rhs.shape != (m,):
            raise DimensionMismatchError(
                f"LP 维度不一致: A {self.constraint_matrix.shape}, c {self.objective.shape}, v {self.rhs.shape}")

    @property
    def shape(self):
        return self.constraint_matrix.shape


@dataclass
class LpSolution:
    """求解结果及对偶证书"""
    status: LpStatus
    b_star: np.ndarray
    objective_value: float
    dual: np.ndarray = field(default_factory=lambda: np.zeros(0))
    duality_gap: float = float('nan')
    dual_infeasibility: float = float('nan')
    primal_infeasibility: float = float('nan')
    iterations: int = 0
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


@dataclass
class _PivotBudget:
    limit: int
    used: int = 0

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit


class SimplexSolver:
    """
    Bland 规则的原始单纯形法

    约化费用只依赖基，不随右端项缩放，optimality_tol 取绝对值；
    比值检验的并列判定和基解可行性按右端项量级乘 rounding_factor·ε 取舍入级容差，
    使 O(λ²) 的右端项差异不被当作并列
    """

    def __init__(self, pivot_tol: float = 1e-12, optimality_tol: float = 1e-12,
                 certificate_tol: float = 1e-9, max_iterations: Optional[int] = None,
                 rounding_factor: float = 64.0):
        self.logger = logging.getLogger(__name__)
        self.pivot_tol = pivot_tol
        self.optimality_tol = optimality_tol
        self.certificate_tol = certificate_tol
        self.max_iterations = max_iterations
        self.rounding_factor = rounding_factor

    def feasibility_tol(self, rhs: np.ndarray) -> float:
        """右端项量级下的舍入级容差"""
        scale = max(1.0, float(np.max(np.abs(rhs), initial=0.0)))
        return self.rounding_factor * MACHINE_EPS * scale

    def solve(self, problem: LpProblem) -> LpSolution:
        """
        求解线性规划

        Args:
            problem: 标准形式问题

        Returns:
            LpSolution；对偶证书不成立或迭代耗尽时状态为 NUMERICAL_TROUBLE
        """
        a = problem.constraint_matrix
        m, n = a.shape
        rhs = problem.rhs.copy()

        if rhs.min(initial=0.0) < -RHS_NEGATIVE_SLACK:
            return LpSolution(LpStatus.INFEASIBLE, np.zeros(n), float('nan'),
                              message=f"右端项为负 {rhs.min():.3e}，零解不可行")
        rhs = np.maximum(rhs, 0.0)
        tol = self.feasibility_tol(rhs)

        full = np.hstack([a, np.eye(m)])
        cost = np.concatenate([problem.objective, np.zeros(m)])
        tableau = np.hstack([full, rhs[:, None]])
        basis: List[int] = list(range(n, n + m))
        budget = _PivotBudget(self.max_iterations or 50 * (m + n))

        while True:
            failure = self._primal_phase(tableau, cost, basis, budget, tol)
            if failure is None:
                try:
                    tableau = self._refresh(full, rhs, basis)
                except np.linalg.LinAlgError as e:
                    failure = f"最优基奇异: {e}"
            if failure is None:
                if tableau[:, -1].min() >= -tol:
                    break
                self.logger.debug(f"基解最小值 {tableau[:, -1].min():.3e}，进入对偶单纯形")
                failure = self._dual_phase(tableau, cost, basis, budget, tol)
            if failure is not None:
                return LpSolution(LpStatus.NUMERICAL_TROUBLE, np.zeros(n), float('nan'),
                                  iterations=budget.used, message=failure)

        values = np.zeros(n + m)
        values[basis] = tableau[:, -1]
        b_star = np.maximum(values[:n], 0.0)
        objective_value = float(cost[basis] @ tableau[:, -1])

        solution = LpSolution(LpStatus.OPTIMAL, b_star, objective_value, iterations=budget.used)
        self._certify(problem, full, cost, basis, solution)
        self.logger.debug(f"单纯形法: {budget.used} 次迭代, 目标值 {objective_value:.15g}, "
                          f"对偶间隙 {solution.duality_gap:.3e}")
        return solution

    def _primal_phase(self, tableau: np.ndarray, cost: np.ndarray, basis: List[int],
                      budget: _PivotBudget, tie_tol: float) -> Optional[str]:
        while True:
            entering = self._pivot_col(tableau, cost, basis)
            if entering is None:
                return None
            if budget.exhausted:
                return f"迭代 {budget.limit} 次未收敛"
            leaving = self._pivot_row(tableau, entering, basis, tie_tol)
            if leaving is None:
                return f"第 {entering} 列无界"
            self._pivot(tableau, leaving, entering)
            basis[leaving] = entering
            budget.used += 1

    def _dual_phase(self, tableau: np.ndarray, cost: np.ndarray, basis: List[int],
                    budget: _PivotBudget, feasibility_tol: float) -> Optional[str]:
        """约化费用保持 ≤ 0，逐行换出为负的基变量（取基下标最小的行）"""
        while True:
            negative = np.flatnonzero(tableau[:, -1] < -feasibility_tol)
            if not negative.size:
                return None
            if budget.exhausted:
                return f"迭代 {budget.limit} 次未收敛"
            leaving = int(min(negative, key=lambda r: basis[r]))
            row = tableau[leaving, :-1]
            columns = np.flatnonzero(row < -self.pivot_tol)
            if not columns.size:
                return f"第 {leaving} 行没有可入基的列"
            reduced = np.minimum(self._reduced_costs(tableau, cost, basis), 0.0)
            ratios = reduced[columns] / row[columns]
            entering = int(columns[ratios <= ratios.min() + self.optimality_tol][0])
            self._pivot(tableau, leaving, entering)
            basis[leaving] = entering
            budget.used += 1

    @staticmethod
    def _refresh(full: np.ndarray, rhs: np.ndarray, basis: List[int]) -> np.ndarray:
        """由基矩阵直接重算表格，消除逐次消元累积的误差"""
        return np.linalg.solve(full[:, basis], np.hstack([full, rhs[:, None]]))

    def _reduced_costs(self, tableau: np.ndarray, cost: np.ndarray, basis: List[int]) -> np.ndarray:
        return cost - cost[basis] @ tableau[:, :-1]

    def _pivot_col(self, tableau: np.ndarray, cost: np.ndarray, basis: List[int]) -> Optional[int]:
        """Bland 规则：下标最小的正约化费用列"""
        candidates = np.flatnonzero(self._reduced_costs(tableau, cost, basis) > self.optimality_tol)
        return int(candidates[0]) if candidates.size else None

    def _pivot_row(self, tableau: np.ndarray, entering: int, basis: List[int], tie_tol: float) -> Optional[int]:
        """最小比值检验，比值差在舍入级以内视为并列，并列时取基变量下标最小的行"""
        column = tableau[:, entering]
        rows = np.flatnonzero(column > self.pivot_tol)
        if not rows.size:
            return None
        ratios = tableau[rows, -1] / column[rows]
        ties = rows[ratios <= ratios.min() + tie_tol]
        return int(min(ties, key=lambda r: basis[r]))

    @staticmethod
    def _pivot(tableau: np.ndarray, row: int, col: int):
        tableau[row] /= tableau[row, col]
        for r in range(tableau.shape[0]):
            if r != row and tableau[r, col] != 0.0:
                tableau[r] -= tableau[r, col] * tableau[row]

    def _certify(self, problem: LpProblem, full: np.ndarray, cost: np.ndarray, basis: List[int],
                 solution: LpSolution):
        """Bᵀy = c_B 回代对偶解，检查对偶可行性与对偶间隙"""
        basis_matrix = full[:, basis]
        try:
            dual = np.linalg.solve(basis_matrix.T, cost[basis])
        except np.linalg.LinAlgError as e:
            solution.status = LpStatus.NUMERICAL_TROUBLE
            solution.message = f"最优基奇异: {e}"
            return

        a = problem.constraint_matrix
        dual_infeasibility = max(0.0, float(np.max(problem.objective - a.T @ dual, initial=0.0)),
                                 float(np.max(-dual, initial=0.0)))
        primal_infeasibility = max(0.0, float(np.max(a @ solution.b_star - problem.rhs, initial=0.0)))
        gap = abs(float(np.maximum(problem.rhs, 0.0) @ dual) - solution.objective_value)

        solution.dual = dual
        solution.duality_gap = gap
        solution.dual_infeasibility = dual_infeasibility
        solution.primal_infeasibility = primal_infeasibility
        worst = max(gap, dual_infeasibility, primal_infeasibility)
        if worst > self.certificate_tol:
            solution.status = LpStatus.NUMERICAL_TROUBLE
            solution.message = f"最优性证书不成立: 间隙 {gap:.3e}, 对偶不可行 {dual_infeasibility:.3e}"
            self.logger.warning(f"⚠️ {solution.message}")


def solve_lp(problem: LpProblem, solver: Optional[SimplexSolver] = None) -> LpSolution:
    return (solver or SimplexSolver()).solve(problem)
