"""
测量场景模块
五角星投影算符、经验模型与关联矩阵
"""
from .empirical import (
    OUTCOMES,
    OUTCOME_PAIRS,
    Scenario,
    EmpiricalModel,
    IncidenceMatrix,
    ModelQualityReport,
    ModelQualityChecker,
    empirical_model,
    incidence,
    deterministic_model,
    validate_model,
)
from .pentagram import (
    PENTAGRAM_CONTEXTS,
    PENTAGRAM_ANGLE_SETS,
    GROUND_BOUND,
    AngleSet,
    ScenarioReport,
    kcbs_cycle_contexts,
    projector_from_angles,
    phi,
    solve_alpha3,
    get_angle_set,
    inspect_scenario,
    check_scenario,
    build_pentagram,
)
from .model_io import (
    parse_probability,
    model_from_document,
    model_to_document,
    load_model,
    save_model,
    scenario_of,
)

__all__ = [
    'OUTCOMES',
    'OUTCOME_PAIRS',
    'Scenario',
    'EmpiricalModel',
    'IncidenceMatrix',
    'ModelQualityReport',
    'ModelQualityChecker',
    'empirical_model',
    'incidence',
    'deterministic_model',
    'validate_model',
    'PENTAGRAM_CONTEXTS',
    'PENTAGRAM_ANGLE_SETS',
    'GROUND_BOUND',
    'AngleSet',
    'ScenarioReport',
    'kcbs_cycle_contexts',
    'projector_from_angles',
    'phi',
    'solve_alpha3',
    'get_angle_set',
    'inspect_scenario',
    'check_scenario',
    'build_pentagram',
    'parse_probability',
    'model_from_document',
    'model_to_document',
    'load_model',
    'save_model',
    'scenario_of',
]
