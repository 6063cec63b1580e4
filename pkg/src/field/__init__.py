"""
涂抹场传播子模块
"""
from .detector_params import (
    GaussTerm,
    DetectorParams,
    PairGeometry,
    SignPair,
    PLUS_PLUS,
    MINUS_PLUS,
    PropagatorKind,
    OrderDirection,
    EvaluationMethod,
    PropagatorValue,
    PropagatorSet,
)
from .propagators import (
    wightman,
    wightman_ordered,
    hadamard,
    causal,
    retarded,
    advanced,
    symmetric,
    feynman,
    evaluate_propagator,
)
from .oracles import evaluate_oracle, ordered_forward_time_oracle

__all__ = [
    'GaussTerm',
    'DetectorParams',
    'PairGeometry',
    'SignPair',
    'PLUS_PLUS',
    'MINUS_PLUS',
    'PropagatorKind',
    'OrderDirection',
    'EvaluationMethod',
    'PropagatorValue',
    'PropagatorSet',
    'wightman',
    'wightman_ordered',
    'hadamard',
    'causal',
    'retarded',
    'advanced',
    'symmetric',
    'feynman',
    'evaluate_propagator',
    'evaluate_oracle',
    'ordered_forward_time_oracle',
]
