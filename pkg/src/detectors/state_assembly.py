#!/usr/bin/env python3
"""
探测器末态组装
把涂抹传播子代入二阶微扰密度矩阵：单 qutrit、qubit-qutrit 以及约化 qutrit

记号：W^{+−}_{ab} = λ_aλ_b·W(Λ⁻_a, Λ⁺_b) 为激发幅度（ρ^{(1,1)} 中 J₊ρ₀J₋ 的系数），
W̄^{++}_{dd} = λ_d²·W_Δt(Λ⁺_d, Λ⁺_d)，G^{++}_{21} = λ₁λ₂·G_F(Λ⁺₁, Λ⁺₂)
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import InvalidDetectorError, InvalidStateError, NonHermitianError, DimensionMismatchError
from ..field.detector_params import (
    DetectorParams,
    EvaluationMethod,
    MINUS_PLUS,
    OrderDirection,
    PLUS_PLUS,
    PropagatorKind,
    PropagatorSet,
    PropagatorValue,
    SignPair,
)
from ..field.propagators import feynman, wightman, wightman_ordered
from ..linalg.matrix_ops import (
    BipartiteShape,
    Subsystem,
    eig_hermitian,
    ground_projector,
    hermiticity_deviation,
    partial_trace,
    tensor,
)
from ..utils.config import harvest_config

logger = logging.getLogger(__name__)

# 态记号中的 "+−" 激发项与 "++" 时序项
EXCITATION = SignPair(1, -1)
SQRT2 = math.sqrt(2.0)

QUBIT_QUTRIT = BipartiteShape(2, 3)
TRACE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
POPULATION_IMAG_TOL = 1e-12


class StateOrder(Enum):
    """微扰阶数"""
    INITIAL = "initial"
    SECOND_ORDER = "second_order"


@dataclass(frozen=True)
class UdwSystem:
    """一个或两个探测器组成的系统；两个时第一个为 qubit"""
    detectors: Tuple[DetectorParams, ...]
    eta: float = harvest_config.strong_support_eta

    def __post_init__(self):
        object.__setattr__(self, 'detectors', tuple(self.detectors))
        dims = tuple(d.dim for d in self.detectors)
        if dims not in ((3,), (2, 3)):
            raise InvalidDetectorError(f"只支持单 qutrit 或 qubit-qutrit 系统，收到维度 {dims}")
        if not self.eta > 0:
            raise InvalidDetectorError(f"η 必须为正: {self.eta}")

    @property
    def is_single(self) -> bool:
        return len(self.detectors) == 1

    def measurement_time(self) -> float:
        """强时间支撑窗口之后的最早测量时刻 max(t̄ + η·T)"""
        return max(d.temporal_centre + self.eta * d.temporal_width for d in self.detectors)


@dataclass
class StateBundle:
    """密度矩阵及其使用的传播子"""
    rho: np.ndarray
    order: StateOrder
    props: PropagatorSet = field(default_factory=PropagatorSet)
    shape: Optional[BipartiteShape] = None
    measurement_time: float = 0.0

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def trace_deviation(self) -> float:
        return abs(complex(np.trace(self.rho)) - 1.0)

    def min_eigenvalue(self) -> float:
        return eig_hermitian(self.rho)[0]


def strong_support_warnings(sys: UdwSystem) -> List[str]:
    """
    强时间支撑提示：|Ω|·T < 1 且 T√α > 1 时微扰图像不可靠

    Returns:
        提示列表（同时写入日志）
    """
    messages = []
    for index, d in enumerate(sys.detectors, start=1):
        width_ratio = max(d.temporal_width * math.sqrt(term.alpha) for term in d.gauss_terms)
        if abs(d.omega) * d.temporal_width < 1 and width_ratio > 1:
            message = (f"探测器{index}: |Ω|T = {abs(d.omega) * d.temporal_width:.3g} < 1 且 "
                       f"T√α = {width_ratio:.3g} > 1，测量窗口 t ≥ {sys.measurement_time():.3g}")
            logger.warning(f"⚠️ {message}")
            messages.append(message)
    return messages


def _excitation_amplitude(d_a: DetectorParams, d_b: DetectorParams, same_system: bool) -> complex:
    """W^{+−}_{ab} = λ_aλ_b·W(Λ⁻_a, Λ⁺_b)"""
    return d_a.coupling * d_b.coupling * wightman(d_a, d_b, MINUS_PLUS, same_system).value


def _real_population(value: complex, label: str) -> float:
    if abs(value.imag) > POPULATION_IMAG_TOL:
        raise InvalidStateError(f"布居 {label} 含虚部 {value.imag:.3e}")
    if value.real < -1e-15:
        logger.warning(f"⚠️ 布居 {label} 为负: {value.real:.3e}")
    return value.real


def _validate(bundle: StateBundle, label: str) -> StateBundle:
    deviation = hermiticity_deviation(bundle.rho)
    if deviation > HERMITIAN_TOL:
        raise NonHermitianError(f"{label} 密度矩阵偏离厄米 {deviation:.3e}")
    if bundle.trace_deviation() > TRACE_TOL:
        raise InvalidStateError(f"{label} 密度矩阵迹偏离 1: {bundle.trace_deviation():.3e}")
    return bundle


def assemble_single_qutrit(sys: UdwSystem) -> StateBundle:
    """
    单 qutrit 末态

    ρ = [[0, 0, −2W̄], [0, 2W, 0], [−2W̄*, 0, 1 − 2W]]，W = W^{+−}_{11}，W̄ = W̄^{++}_{11}

    Args:
        sys: 单探测器系统

    Returns:
        二阶末态
    """
    if not sys.is_single:
        raise InvalidDetectorError("单 qutrit 组装需要恰好一个 qutrit 探测器")
    d = sys.detectors[0]
    lam2 = d.coupling ** 2
    strong_support_warnings(sys)

    excitation = _excitation_amplitude(d, d, True)
    ordered = wightman_ordered(OrderDirection.FWD, d, d, PLUS_PLUS, True)
    w_bar = lam2 * ordered.value
    population = _real_population(excitation, "W^{+-}_11")

    rho = np.zeros((3, 3), dtype=complex)
    rho[1, 1] = 2.0 * population
    rho[2, 2] = 1.0 - 2.0 * population
    rho[0, 2] = -2.0 * w_bar
    rho[2, 0] = np.conj(rho[0, 2])

    props = PropagatorSet()
    props.put("11", EXCITATION, PropagatorValue(excitation, PropagatorKind.WIGHTMAN))
    props.put("11", PLUS_PLUS, PropagatorValue(w_bar, PropagatorKind.WIGHTMAN_FWD, ordered.method))

    bundle = StateBundle(rho, StateOrder.SECOND_ORDER, props, measurement_time=sys.measurement_time())
    logger.debug(f"单 qutrit 末态: Ω={d.omega:.4g}, T={d.temporal_width:.4g}, ρ22={rho[1, 1].real:.3e}")
    return _validate(bundle, "单 qutrit")


def assemble_qubit_qutrit(sys: UdwSystem) -> StateBundle:
    """
    qubit-qutrit 联合末态，基矢顺序 |1/2⟩⊗(|1⟩,|0⟩,|−1⟩), |−1/2⟩⊗(|1⟩,|0⟩,|−1⟩)

    非零元：ρ₃₃ = W₁₁，ρ₃₅ = √2W₂₁，ρ₅₃ = √2W₁₂，ρ₅₅ = 2W₂₂，
    ρ₂₆ = r₆₂*，ρ₄₆ = r₄₆，ρ₆₆ = 1 − W₁₁ − 2W₂₂（1 起始编号），
    r₆₂ = −√2·(G^{++}_{21})*，r₄₆ = −2W̄^{++}_{22}

    Args:
        sys: 双探测器系统（qubit 在前）

    Returns:
        二阶联合末态
    """
    if sys.is_single:
        raise InvalidDetectorError("qubit-qutrit 组装需要两个探测器")
    qubit, qutrit = sys.detectors
    strong_support_warnings(sys)

    w11 = _real_population(_excitation_amplitude(qubit, qubit, True), "W^{+-}_11")
    w22 = _real_population(_excitation_amplitude(qutrit, qutrit, True), "W^{+-}_22")
    w21 = _excitation_amplitude(qutrit, qubit, False)
    w12 = _excitation_amplitude(qubit, qutrit, False)
    mismatch = abs(w12 - np.conj(w21))
    if mismatch > 1e-10 * max(abs(w12), abs(w21)) + 1e-300:
        raise NonHermitianError(f"W^{{+-}}_12 与 (W^{{+-}}_21)* 不一致: 偏差 {mismatch:.3e}")

    ordered = wightman_ordered(OrderDirection.FWD, qutrit, qutrit, PLUS_PLUS, True)
    w_bar22 = qutrit.coupling ** 2 * ordered.value
    g21 = qubit.coupling * qutrit.coupling * feynman(qubit, qutrit, PLUS_PLUS, False).value

    r46 = -2.0 * w_bar22
    r62 = -SQRT2 * np.conj(g21)

    rho = np.zeros((6, 6), dtype=complex)
    rho[2, 2] = w11
    rho[4, 4] = 2.0 * w22
    rho[2, 4] = SQRT2 * w21
    rho[4, 2] = SQRT2 * w12
    rho[1, 5] = np.conj(r62)
    rho[5, 1] = r62
    rho[3, 5] = r46
    rho[5, 3] = np.conj(r46)
    rho[5, 5] = 1.0 - w11 - 2.0 * w22

    props = PropagatorSet()
    props.put("11", EXCITATION, PropagatorValue(w11, PropagatorKind.WIGHTMAN))
    props.put("22", EXCITATION, PropagatorValue(w22, PropagatorKind.WIGHTMAN))
    props.put("12", EXCITATION, PropagatorValue(w12, PropagatorKind.WIGHTMAN))
    props.put("21", EXCITATION, PropagatorValue(w21, PropagatorKind.WIGHTMAN))
    props.put("22", PLUS_PLUS, PropagatorValue(w_bar22, PropagatorKind.WIGHTMAN_FWD, ordered.method))
    props.put("21", PLUS_PLUS, PropagatorValue(g21, PropagatorKind.FEYNMAN))

    bundle = StateBundle(rho, StateOrder.SECOND_ORDER, props, QUBIT_QUTRIT, sys.measurement_time())
    return _validate(bundle, "qubit-qutrit")


def reduce_qutrit(bundle: StateBundle) -> StateBundle:
    """
    对 qubit 求部分迹，得到 qutrit 约化态（下标 22 的单 qutrit 形式）

    Raises:
        DimensionMismatchError: 输入不是 6×6
    """
    if bundle.rho.shape != (6, 6):
        raise DimensionMismatchError(f"约化需要 6×6 态，收到 {bundle.rho.shape}")
    rho = partial_trace(bundle.rho, QUBIT_QUTRIT, keep=Subsystem.B)
    props = PropagatorSet({key: value for key, value in bundle.props if key[0] == "22"})
    return StateBundle(rho, bundle.order, props, None, bundle.measurement_time)


def initial_state(sys: UdwSystem) -> StateBundle:
    """零阶基态 |g⟩⟨g|"""
    if sys.is_single:
        return StateBundle(ground_projector(3), StateOrder.INITIAL)
    rho = tensor(ground_projector(2), ground_projector(3))
    return StateBundle(rho, StateOrder.INITIAL, shape=QUBIT_QUTRIT)


def free_evolution_operator(detectors: Sequence[DetectorParams], dt: float) -> np.ndarray:
    """e^{−iH₀Δt}，H₀ = Σ Ω_d·J_z^{(d)}，按联合基矢顺序排列的对角矩阵"""
    unitary = np.ones((1, 1), dtype=complex)
    for d in detectors:
        j = (d.dim - 1) / 2.0
        levels = j - np.arange(d.dim)
        unitary = tensor(unitary, np.diag(np.exp(-1j * d.omega * levels * dt)))
    return unitary


def free_evolution(rho: np.ndarray, detectors: Sequence[DetectorParams], dt: float) -> np.ndarray:
    """ρ → U ρ U†，U = e^{−iH₀Δt}"""
    unitary = free_evolution_operator(detectors, dt)
    return unitary @ rho @ unitary.conj().T
