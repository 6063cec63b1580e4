#!/usr/bin/env python3
"""
涂抹双分布的闭式核

对高斯项对 (l, m)，所有两点量都写成
    w_lm/(4π²) · e^C ∫₀^∞ κ·sinc(κL)·e^{Bκ − Aκ²}·τ(κ) dκ
其中
    A = (β + T² + T'²)/4
    B = (pΩT² − qΩ'T'²)/2 − iΔt̄
    C = −(T²Ω² + T'²Ω'²)/4 + i(pΩt̄ + qΩ't̄')
τ = 1 对应 Wightman；τ = ½(1 + erf(μ/σ)) 对应正向时序，
μ = μ₀ − iκσ²/2，μ₀ = Δt̄ + i(pΩT² − qΩ'T'²)/2，σ² = T² + T'²。
交换两个涂抹函数等价于 B → −B。
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from ..common.errors import UnsupportedSmearingError
from ..numerics.special import gaussian_half_line_moments, scaled_exp_erf
from ..numerics.quadrature import QuadratureRunner
from ..utils.config import harvest_config
from .detector_params import DetectorParams, PairGeometry, SignPair

logger = logging.getLogger(__name__)

FOUR_PI_SQ = 4.0 * math.pi ** 2
SMALL_L_FACTOR = harvest_config.small_l_factor


@dataclass(frozen=True)
class PairKernel:
    """一对高斯项的指数系数"""
    weight: float
    geometry: PairGeometry
    a: float
    b: complex
    c: complex
    mu0: complex
    sigma2: float

    @property
    def beta(self) -> float:
        return self.geometry.beta

    @property
    def separation(self) -> float:
        return self.geometry.separation

    def is_small_separation(self) -> bool:
        return 0.0 < self.separation < SMALL_L_FACTOR * math.sqrt(self.beta)


def pair_kernels(d: DetectorParams, d2: DetectorParams, s: SignPair) -> List[PairKernel]:
    """展开 Λ^p_d 与 Λ^q_{d2} 的全部高斯项对"""
    t1, t2 = d.temporal_width, d2.temporal_width
    w1, w2 = d.omega, d2.omega
    delta_tbar = d.temporal_centre - d2.temporal_centre
    phase_shift = (s.p * w1 * t1 ** 2 - s.q * w2 * t2 ** 2) / 2.0

    b = complex(phase_shift, -delta_tbar)
    c = complex(-(t1 ** 2 * w1 ** 2 + t2 ** 2 * w2 ** 2) / 4.0,
                s.p * w1 * d.temporal_centre + s.q * w2 * d2.temporal_centre)
    mu0 = complex(delta_tbar, phase_shift)
    sigma2 = t1 ** 2 + t2 ** 2
    norm = d.norm * d2.norm

    kernels = []
    for term_l in d.gauss_terms:
        for term_m in d2.gauss_terms:
            geometry = PairGeometry.from_terms(d, term_l, d2, term_m)
            kernels.append(PairKernel(
                weight=term_l.reduced_coeff * term_m.reduced_coeff / norm,
                geometry=geometry,
                a=(geometry.beta + sigma2) / 4.0,
                b=b,
                c=c,
                mu0=mu0,
                sigma2=sigma2,
            ))
    return kernels


def kappa_integral(k: PairKernel, b: complex) -> complex:
    """
    e^C ∫₀^∞ κ·sinc(κL)·e^{bκ − Aκ²} dκ

    L = 0 取一阶矩；小 L 用 sinc 的四阶 Taylor 展开；
    其余用 sin(κL)/L = (e^{iκL} − e^{−iκL})/(2iL) 的两个零阶矩之差
    """
    L = k.separation
    if L == 0.0:
        return gaussian_half_line_moments(k.a, b, k.c, 1)[1]
    if k.is_small_separation():
        moments = gaussian_half_line_moments(k.a, b, k.c, 5)
        return moments[1] - L ** 2 * moments[3] / 6.0 + L ** 4 * moments[5] / 120.0
    plus = gaussian_half_line_moments(k.a, b + 1j * L, k.c, 0)[0]
    minus = gaussian_half_line_moments(k.a, b - 1j * L, k.c, 0)[0]
    return (plus - minus) / (2j * L)


def wightman_sum(d: DetectorParams, d2: DetectorParams, s: SignPair) -> complex:
    """W(Λ^p_d, Λ^q_{d2})"""
    return sum(k.weight * kappa_integral(k, k.b) for k in pair_kernels(d, d2, s)) / FOUR_PI_SQ


def hadamard_sum(d: DetectorParams, d2: DetectorParams, s: SignPair) -> complex:
    """H = W(p,q;d,d2) + W(q,p;d2,d)"""
    total = sum(k.weight * (kappa_integral(k, k.b) + kappa_integral(k, -k.b))
                for k in pair_kernels(d, d2, s))
    return total / FOUR_PI_SQ


def causal_sum(d: DetectorParams, d2: DetectorParams, s: SignPair) -> complex:
    """E = −i[W(p,q;d,d2) − W(q,p;d2,d)]"""
    total = sum(k.weight * (kappa_integral(k, k.b) - kappa_integral(k, -k.b))
                for k in pair_kernels(d, d2, s))
    return -1j * total / FOUR_PI_SQ


def erf_residual_integrand(k: PairKernel) -> Callable[[float], complex]:
    """κ·sinc(κL)·e^{Bκ − Aκ²}·erf(μ/σ)，不含 e^C"""
    sigma = math.sqrt(k.sigma2)
    L = k.separation

    def integrand(kappa: float) -> complex:
        mu = k.mu0 - 0.5j * kappa * k.sigma2
        value = kappa * scaled_exp_erf(k.b * kappa - k.a * kappa ** 2, mu / sigma)
        if L > 0:
            value *= np.sinc(kappa * L / math.pi)
        return value

    return integrand


def residual_is_closed(k: PairKernel) -> bool:
    """B = 0、μ₀ = 0、L = 0 时 erf 残差有闭式"""
    return k.b == 0 and k.mu0 == 0 and k.separation == 0.0


def ordered_forward_sum(d: DetectorParams, d2: DetectorParams, s: SignPair,
                        runner: Optional[QuadratureRunner] = None) -> complex:
    """
    正向时序 W_Δt = ½W + ½·(erf 残差)

    残差在同号同系统（B = μ₀ = L = 0）时为
    −i·e^C·σ/(2A√β)，否则数值积分
    """
    runner = runner or QuadratureRunner()
    total = 0j
    for k in pair_kernels(d, d2, s):
        half_w = 0.5 * kappa_integral(k, k.b)
        if residual_is_closed(k):
            residual = -1j * cmath.exp(k.c) * math.sqrt(k.sigma2) / (2.0 * k.a * math.sqrt(k.beta))
            logger.debug(f"时序残差闭式: β={k.beta:.4g}")
        else:
            drift = max(0.0, k.b.real) / (2.0 * k.a)
            residual = cmath.exp(k.c) * runner.integrate(
                erf_residual_integrand(k), 2.0 / math.sqrt(k.beta), drift)
            logger.debug(f"时序残差积分: β={k.beta:.4g}, L={k.separation:.4g}")
        total += k.weight * (half_w + 0.5 * residual)
    return total / FOUR_PI_SQ


def require_uniform_profile(d: DetectorParams, d2: DetectorParams):
    """
    推迟传播子闭式要求所有高斯项 α 相同，且每个探测器的高斯项共享中心

    Raises:
        UnsupportedSmearingError: 配置超出闭式适用范围
    """
    alphas = [term.alpha for term in d.gauss_terms + d2.gauss_terms]
    reference = alphas[0]
    if any(abs(alpha - reference) > 1e-12 * reference for alpha in alphas):
        raise UnsupportedSmearingError(f"推迟/超前传播子要求相同的空间涂抹 α，收到 {alphas}")
    for detector in (d, d2):
        centres = {term.centre for term in detector.gauss_terms}
        if len(centres) > 1:
            raise UnsupportedSmearingError(f"推迟/超前传播子要求探测器的高斯项共享中心，收到 {sorted(centres)}")


def retarded_sum(d: DetectorParams, d2: DetectorParams, s: SignPair) -> complex:
    """
    G_R(Λ^p_d, Λ^q_{d2})，在间距 r 空间的闭式

    G_R = −Σ w/(4π²L√(βσ²)) ∫₀^∞ e^{C − (r−μ₀)²/σ²}[e^{−(r−L)²/β} − e^{−(r+L)²/β}] dr
    """
    require_uniform_profile(d, d2)
    total = 0j
    for k in pair_kernels(d, d2, s):
        beta, L, s2 = k.beta, k.separation, k.sigma2
        a_r = 1.0 / s2 + 1.0 / beta
        b_r = 2.0 * k.mu0 / s2
        c_r = k.c - k.mu0 ** 2 / s2 - L ** 2 / beta
        if L == 0.0:
            j1 = gaussian_half_line_moments(a_r, b_r, c_r, 1)[1]
            value = -j1 / (math.pi ** 2 * beta ** 1.5 * math.sqrt(s2))
        elif k.is_small_separation():
            moments = gaussian_half_line_moments(a_r, b_r, c_r, 5)
            x2 = (2.0 * L / beta) ** 2
            series = moments[1] + x2 * moments[3] / 6.0 + x2 ** 2 * moments[5] / 120.0
            value = -(4.0 / beta) * series / (FOUR_PI_SQ * math.sqrt(beta * s2))
        else:
            shift = 2.0 * L / beta
            near = gaussian_half_line_moments(a_r, b_r + shift, c_r, 0)[0]
            far = gaussian_half_line_moments(a_r, b_r - shift, c_r, 0)[0]
            value = -(near - far) / (FOUR_PI_SQ * L * math.sqrt(beta * s2))
        total += k.weight * value
    return total
