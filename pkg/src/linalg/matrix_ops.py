#!/usr/bin/env python3
"""
小维度稠密复矩阵运算
张量积、部分转置、部分迹、厄米特征值

基矢约定：qutrit 为 (|1⟩, |0⟩, |−1⟩)，qubit 为 (|1/2⟩, |−1/2⟩)，
联合系统按第一个因子为外层索引排列；基态总是最后一个基矢
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..common.errors import DimensionMismatchError, NonHermitianError

logger = logging.getLogger(__name__)

# 类型别名：所有矩阵都是 complex128 的二维 ndarray
ComplexMatrix = np.ndarray

HERMITICITY_TOL = 1e-10

_BASIS_LABELS = {
    2: ["|1/2⟩", "|-1/2⟩"],
    3: ["|1⟩", "|0⟩", "|-1⟩"],
}


class Subsystem(Enum):
    """二体系统的子系统"""
    A = "A"
    B = "B"


@dataclass(frozen=True)
class BipartiteShape:
    """二体系统维度"""
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatchError(f"子系统维度必须 ≥ 1: {self.dim_a}×{self.dim_b}")

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b


def as_matrix(m) -> ComplexMatrix:
    """转换为 complex128 方阵"""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatchError(f"需要非空方阵，收到形状 {arr.shape}")
    return arr


def _require_shape(m: ComplexMatrix, shape: BipartiteShape) -> ComplexMatrix:
    m = as_matrix(m)
    if m.shape[0] != shape.total:
        raise DimensionMismatchError(
            f"矩阵维度 {m.shape[0]} 与二体形状 {shape.dim_a}×{shape.dim_b} 不符")
    return m


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker 积，第一个因子为第一个子系统"""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_transpose(m: ComplexMatrix, shape: BipartiteShape,
                      subsystem: Subsystem = Subsystem.B) -> ComplexMatrix:
    """
    对指定子系统做部分转置

    Args:
        m: dim_a·dim_b 维方阵
        shape: 二体形状
        subsystem: 被转置的子系统

    Returns:
        部分转置后的矩阵（两次作用精确还原）
    """
    m = _require_shape(m, shape)
    blocks = m.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    if subsystem == Subsystem.A:
        blocks = blocks.transpose(2, 1, 0, 3)
    else:
        blocks = blocks.transpose(0, 3, 2, 1)
    return blocks.reshape(shape.total, shape.total).copy()


def partial_trace(m: ComplexMatrix, shape: BipartiteShape,
                  keep: Subsystem = Subsystem.B) -> ComplexMatrix:
    """对另一个子系统求迹，保留 keep"""
    m = _require_shape(m, shape)
    blocks = m.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    if keep == Subsystem.B:
        return np.einsum('ajak->jk', blocks)
    return np.einsum('ajbj->ab', blocks)


def hermiticity_deviation(m: ComplexMatrix) -> float:
    """‖m − m†‖_max"""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def eig_hermitian(m: ComplexMatrix, tol: float = HERMITICITY_TOL) -> List[float]:
    """
    厄米矩阵特征值（升序）

    Args:
        m: 方阵，‖m − m†‖_max ≤ tol
        tol: 厄米性容差

    Returns:
        实特征值列表

    Raises:
        NonHermitianError: 偏离厄米性超过容差
    """
    m = as_matrix(m)
    deviation = hermiticity_deviation(m)
    if deviation > tol:
        raise NonHermitianError(f"矩阵非厄米: 偏差 {deviation:.3e} > {tol:.1e}")
    symmetric = 0.5 * (m + m.conj().T)
    return [float(x) for x in np.linalg.eigvalsh(symmetric)]


def decoupled_blocks(m: ComplexMatrix) -> List[np.ndarray]:
    """
    按非零元连通性把方阵分成互不耦合的主子块

    Returns:
        每块的索引数组（升序），块按最小索引排序
    """
    m = as_matrix(m)
    pattern = csr_matrix(np.abs(m) + np.abs(m.T) > 0.0)
    _, labels = connected_components(pattern, directed=False)
    blocks = [np.flatnonzero(labels == label) for label in np.unique(labels)]
    return sorted(blocks, key=lambda idx: int(idx[0]))


def expect(rho: ComplexMatrix, op: ComplexMatrix) -> complex:
    """Tr(ρ·op)"""
    rho = as_matrix(rho)
    op = as_matrix(op)
    if rho.shape != op.shape:
        raise DimensionMismatchError(f"维度不匹配: {rho.shape} vs {op.shape}")
    return complex(np.einsum('ij,ji->', rho, op))


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """[a, b] = ab − ba"""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"维度不匹配: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def max_abs(m: ComplexMatrix) -> float:
    """最大元素模"""
    return float(np.max(np.abs(np.asarray(m))))


def ground_projector(dim: int) -> ComplexMatrix:
    """基态投影 |g⟩⟨g|，基态为最后一个基矢"""
    if dim < 1:
        raise DimensionMismatchError(f"维度必须 ≥ 1: {dim}")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[dim - 1, dim - 1] = 1.0
    return rho


def basis_labels(dim: int) -> List[str]:
    """能级基矢标签"""
    return list(_BASIS_LABELS.get(dim, [f"|{i}⟩" for i in range(dim)]))


def joint_basis_labels(shape: BipartiteShape) -> List[Tuple[str, str]]:
    """联合基矢标签，第一个子系统为外层"""
    return [(a, b) for a in basis_labels(shape.dim_a) for b in basis_labels(shape.dim_b)]

