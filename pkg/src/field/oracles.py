#!/usr/bin/env python3
"""
传播子的数值参照
由场模式展开直接积分：每个探测器单独做时间与空间的高斯 Fourier 变换，
|k| 方向用自适应积分，时序部分由复高斯差变量的分布函数给出；
另有正向时序的二维时间域 Simpson 积分。
不使用 kernels 中合并后的 A、B、C、μ₀ 系数，用于交叉验证闭式
"""
import cmath
import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import special

from ..numerics.quadrature import QuadratureSpec, integrate_semi_infinite, simpson_2d
from .detector_params import (
    DetectorParams,
    EvaluationMethod,
    PropagatorKind,
    PropagatorValue,
    SignPair,
)

logger = logging.getLogger(__name__)

ORACLE_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=500, cutoff_sigma=12.0)

# d³k/((2π)³·2|k|) 的角向积分给出 4π·sinc(|k|L)
MODE_MEASURE = 4.0 * math.pi / (2.0 * (2.0 * math.pi) ** 3)


def _sinc(kappa: float, separation: float) -> float:
    return float(np.sinc(kappa * separation / math.pi)) if separation > 0 else 1.0


def _term_pairs(d: DetectorParams, d2: DetectorParams) -> List[Tuple[float, float, float]]:
    """(归一化权重, β = 1/α_l + 1/α_m, 中心间距)，每项空间 Fourier 变换为 (π/α)^{3/2}·e^{−k²/4α}"""
    norm = sum(t.coeff * t.alpha ** -1.5 for t in d.gauss_terms)
    norm2 = sum(t.coeff * t.alpha ** -1.5 for t in d2.gauss_terms)
    pairs = []
    for term_l in d.gauss_terms:
        for term_m in d2.gauss_terms:
            weight = term_l.coeff * term_l.alpha ** -1.5 * term_m.coeff * term_m.alpha ** -1.5 / (norm * norm2)
            beta = 1.0 / term_l.alpha + 1.0 / term_m.alpha
            pairs.append((weight, beta, math.dist(term_l.centre, term_m.centre)))
    return pairs


def _spatial_factor(pairs: List[Tuple[float, float, float]], kappa: float) -> float:
    return math.fsum(w * math.exp(-beta * kappa ** 2 / 4.0) * _sinc(kappa, L) for w, beta, L in pairs)


def _switching_exponent(d: DetectorParams, frequency: float) -> complex:
    """ln ∫ e^{−(t−t̄)²/T²}/(√πT)·e^{iνt} dt = iνt̄ − ν²T²/4"""
    return 1j * frequency * d.temporal_centre - (frequency * d.temporal_width) ** 2 / 4.0


def _ordered_weight(exponent: complex, z: complex) -> complex:
    """e^E·½(1 + erf z)，按 Re z 的符号选用不溢出的 Faddeeva 形式"""
    if z.real >= 0.0:
        return cmath.exp(exponent) - 0.5 * cmath.exp(exponent - z * z) * complex(special.wofz(1j * z))
    return 0.5 * cmath.exp(exponent - z * z) * complex(special.wofz(-1j * z))


class _ModeIntegrand:
    """
    单个 |k| 上两涂抹函数的时间因子

    第一个探测器在频率 a = pΩ − σκ、第二个在 b = qΩ' + σκ 处取 Fourier 变换，
    σ = +1 对应 W(x, x')，σ = −1 对应 W(x', x)。
    t > t' 的部分：t、t' 视作复平移高斯，差变量均值
    μ = Δt̄ + i(aT² − bT'²)/2，方差 (T² + T'²)/2
    """

    def __init__(self, d: DetectorParams, d2: DetectorParams, s: SignPair):
        self.d, self.d2, self.s = d, d2, s
        self.width = math.hypot(d.temporal_width, d2.temporal_width)
        self.delta_tbar = d.temporal_centre - d2.temporal_centre

    def exponent(self, kappa: float, orientation: int) -> complex:
        a = self.s.p * self.d.omega - orientation * kappa
        b = self.s.q * self.d2.omega + orientation * kappa
        return _switching_exponent(self.d, a) + _switching_exponent(self.d2, b)

    def ordered(self, kappa: float, orientation: int) -> complex:
        a = self.s.p * self.d.omega - orientation * kappa
        b = self.s.q * self.d2.omega + orientation * kappa
        mean = self.delta_tbar + 0.5j * (a * self.d.temporal_width ** 2 - b * self.d2.temporal_width ** 2)
        return _ordered_weight(self.exponent(kappa, orientation), mean / self.width)

    def peak(self) -> float:
        """时间因子模的峰值位置"""
        t1, t2 = self.d.temporal_width, self.d2.temporal_width
        return (self.s.p * self.d.omega * t1 ** 2 - self.s.q * self.d2.omega * t2 ** 2) / (t1 ** 2 + t2 ** 2)


def _mode_quadrature(d: DetectorParams, d2: DetectorParams, s: SignPair,
                     temporal: Callable[[_ModeIntegrand, float], complex],
                     spec: QuadratureSpec) -> complex:
    pairs = _term_pairs(d, d2)
    mode = _ModeIntegrand(d, d2, s)
    # 时序部分只有空间包络提供高斯衰减
    decay_width = 2.0 / math.sqrt(min(beta for _, beta, _ in pairs))

    def integrand(kappa: float) -> complex:
        return MODE_MEASURE * kappa * _spatial_factor(pairs, kappa) * temporal(mode, kappa)

    return integrate_semi_infinite(integrand, decay_width, spec, mode.peak())


def wightman_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                    spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    """模式积分的 W(Λ^p_d, Λ^q_{d2})"""
    return _mode_quadrature(d, d2, s, lambda mode, k: cmath.exp(mode.exponent(k, 1)), spec)


def hadamard_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                    spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    return wightman_oracle(d, d2, s, spec) + wightman_oracle(d2, d, s.swapped(), spec)


def causal_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                  spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    return -1j * (wightman_oracle(d, d2, s, spec) - wightman_oracle(d2, d, s.swapped(), spec))


def ordered_forward_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                           spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    """θ(t − t') 限制下的 W，整体做模式积分"""
    return _mode_quadrature(d, d2, s, lambda mode, k: mode.ordered(k, 1), spec)


def retarded_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                    spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    """G_R = θ(t₁ − t₂)·(−i)[W(x₁,x₂) − W(x₂,x₁)]"""
    return _mode_quadrature(d, d2, s, lambda mode, k: -1j * (mode.ordered(k, 1) - mode.ordered(k, -1)), spec)


def advanced_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                    spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    return retarded_oracle(d2, d, s.swapped(), spec)


def symmetric_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                     spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    return retarded_oracle(d, d2, s, spec) + advanced_oracle(d, d2, s, spec)


def feynman_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                   spec: QuadratureSpec = ORACLE_SPEC) -> complex:
    return 0.5 * hadamard_oracle(d, d2, s, spec) + 0.5j * symmetric_oracle(d, d2, s, spec)


def smeared_kernel_profile(tau: np.ndarray, beta: float, separation: float) -> np.ndarray:
    """
    空间涂抹后的 Wightman 时间核
    F(τ) = (1/4π²)∫₀^∞ κ·sinc(κL)·e^{−βκ²/4 − iκτ} dκ，用 Faddeeva 函数逐点求值
    """
    tau = np.asarray(tau, dtype=float)
    root = math.sqrt(beta)
    if separation == 0.0:
        values = (2.0 / beta) * (1.0 - 1j * tau * math.sqrt(math.pi) * special.wofz(-tau / root) / root)
    else:
        L = separation
        values = math.sqrt(math.pi) / (2j * L * root) * (
            special.wofz((L - tau) / root) - special.wofz(-(tau + L) / root))
    return values * MODE_MEASURE


def ordered_forward_time_oracle(d: DetectorParams, d2: DetectorParams, s: SignPair,
                                n_points: int = 1601, span: float = 10.0) -> complex:
    """
    W_Δt 的二维时间域参照：在 x = t₁ − t₂ ≥ 0、y = t₁ + t₂ 网格上做 Simpson 积分

    Args:
        d: 第一个探测器
        d2: 第二个探测器
        s: 符号对
        n_points: 每个方向的网格点数（奇数）
        span: 网格覆盖的时间宽度倍数

    Returns:
        积分值
    """
    if n_points % 2 == 0:
        n_points += 1
    t_1, t_2 = d.temporal_width, d2.temporal_width
    c_1, c_2 = d.temporal_centre, d2.temporal_centre
    sigma = math.hypot(t_1, t_2)
    delta = c_1 - c_2

    x = np.linspace(0.0, max(0.0, delta) + span * sigma, n_points)
    half_width = span * (t_1 + t_2) + abs(delta)
    y = np.linspace(c_1 + c_2 - half_width, c_1 + c_2 + half_width, n_points)
    grid_x, grid_y = np.meshgrid(x, y, indexing='ij')
    time_1 = 0.5 * (grid_y + grid_x)
    time_2 = 0.5 * (grid_y - grid_x)

    profile_1 = np.exp(-(time_1 - c_1) ** 2 / t_1 ** 2 + 1j * s.p * d.omega * time_1) / (math.sqrt(math.pi) * t_1)
    profile_2 = np.exp(-(time_2 - c_2) ** 2 / t_2 ** 2 + 1j * s.q * d2.omega * time_2) / (math.sqrt(math.pi) * t_2)
    # dt₁dt₂ = ½ dx dy
    temporal = 0.5 * profile_1 * profile_2

    total = 0j
    for weight, beta, separation in _term_pairs(d, d2):
        kernel = smeared_kernel_profile(x, beta, separation)
        total += weight * simpson_2d(temporal * kernel[:, None], x, y)
    return total


_ORACLES: Dict[PropagatorKind, Callable[..., complex]] = {
    PropagatorKind.WIGHTMAN: wightman_oracle,
    PropagatorKind.HADAMARD: hadamard_oracle,
    PropagatorKind.CAUSAL: causal_oracle,
    PropagatorKind.RETARDED: retarded_oracle,
    PropagatorKind.ADVANCED: advanced_oracle,
    PropagatorKind.SYMMETRIC: symmetric_oracle,
    PropagatorKind.FEYNMAN: feynman_oracle,
    PropagatorKind.WIGHTMAN_FWD: ordered_forward_oracle,
}


def evaluate_oracle(kind: PropagatorKind, d: DetectorParams, d2: DetectorParams, s: SignPair,
                    spec: Optional[QuadratureSpec] = None) -> PropagatorValue:
    """
    按种类求数值参照值

    Args:
        kind: 传播子种类
        d: 第一个探测器
        d2: 第二个探测器
        s: 符号对
        spec: 积分精度（默认 ORACLE_SPEC）

    Returns:
        method 为 QUADRATURE 的取值
    """
    spec = spec or ORACLE_SPEC
    if kind == PropagatorKind.WIGHTMAN_BWD:
        value = ordered_forward_oracle(d2, d, s.swapped(), spec)
    else:
        value = _ORACLES[kind](d, d2, s, spec)
    return PropagatorValue(value, kind, EvaluationMethod.QUADRATURE)
