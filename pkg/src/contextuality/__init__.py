"""
语境分数模块
"""
from .simplex import (
    LpStatus,
    LpProblem,
    LpSolution,
    SimplexSolver,
    solve_lp,
)
from .fraction import (
    solve_ncf,
    contextual_fraction,
    delta_cf,
    anti_correlation_coefficients,
    InequalityBounds,
    inequality_bounds,
    normalized_violation,
    fraction_pair,
)

__all__ = [
    'LpStatus',
    'LpProblem',
    'LpSolution',
    'SimplexSolver',
    'solve_lp',
    'solve_ncf',
    'contextual_fraction',
    'delta_cf',
    'anti_correlation_coefficients',
    'InequalityBounds',
    'inequality_bounds',
    'normalized_violation',
    'fraction_pair',
]
