"""
线性代数模块
"""
from .matrix_ops import (
    ComplexMatrix,
    Subsystem,
    BipartiteShape,
    as_matrix,
    tensor,
    partial_transpose,
    partial_trace,
    hermiticity_deviation,
    eig_hermitian,
    decoupled_blocks,
    expect,
    commutator,
    max_abs,
    ground_projector,
    basis_labels,
    joint_basis_labels,
)

__all__ = [
    'ComplexMatrix',
    'Subsystem',
    'BipartiteShape',
    'as_matrix',
    'tensor',
    'partial_transpose',
    'partial_trace',
    'hermiticity_deviation',
    'eig_hermitian',
    'decoupled_blocks',
    'expect',
    'commutator',
    'max_abs',
    'ground_projector',
    'basis_labels',
    'joint_basis_labels',
]
