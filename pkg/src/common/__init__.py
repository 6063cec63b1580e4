"""
公共定义模块
"""
from .errors import (
    HarvestError,
    ConfigurationError,
    InvalidDetectorError,
    UnknownPresetError,
    NumericalError,
    NumericalOverflowError,
    QuadratureAccuracyError,
    NonHermitianError,
    InvalidStateError,
    LpNumericalTrouble,
    DimensionMismatchError,
    UnsupportedSmearingError,
    ScenarioDomainError,
    ScenarioConstructionError,
    PreconditionError,
    MissingScalarError,
    SweepOutputError,
)

__all__ = [
    'HarvestError',
    'ConfigurationError',
    'InvalidDetectorError',
    'UnknownPresetError',
    'NumericalError',
    'NumericalOverflowError',
    'QuadratureAccuracyError',
    'NonHermitianError',
    'InvalidStateError',
    'LpNumericalTrouble',
    'DimensionMismatchError',
    'UnsupportedSmearingError',
    'ScenarioDomainError',
    'ScenarioConstructionError',
    'PreconditionError',
    'MissingScalarError',
    'SweepOutputError',
]
