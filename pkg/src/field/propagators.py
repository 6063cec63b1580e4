#!/usr/bin/env python3
"""
涂抹传播子的公开接口
所有函数返回不含 λ 因子的 PropagatorValue；λ 由态组装模块乘入
"""
import logging
from typing import Callable, Dict, Optional

from ..common.errors import InvalidDetectorError
from ..numerics.quadrature import QuadratureRunner, QuadratureSpec
from .detector_params import (
    DetectorParams,
    EvaluationMethod,
    OrderDirection,
    PropagatorKind,
    PropagatorValue,
    SignPair,
)
from .kernels import (
    causal_sum,
    hadamard_sum,
    ordered_forward_sum,
    pair_kernels,
    residual_is_closed,
    retarded_sum,
    wightman_sum,
)

logger = logging.getLogger(__name__)

_default_runner = QuadratureRunner(QuadratureSpec.from_config())


def _check_pair(d: DetectorParams, d2: DetectorParams, same_system: bool):
    if same_system and d2 != d:
        raise InvalidDetectorError("同系统传播子要求两个探测器参数完全一致")


def wightman(d: DetectorParams, d2: DetectorParams, s: SignPair,
             same_system: bool = False) -> PropagatorValue:
    """
    涂抹 Wightman 函数 W(Λ^p_d, Λ^q_{d2})

    Args:
        d: 第一个探测器
        d2: 第二个探测器
        s: 符号对 (p, q)
        same_system: 是否同一探测器

    Returns:
        闭式取值
    """
    _check_pair(d, d2, same_system)
    return PropagatorValue(wightman_sum(d, d2, s), PropagatorKind.WIGHTMAN)


def wightman_ordered(direction: OrderDirection, d: DetectorParams, d2: DetectorParams,
                     s: SignPair, same_system: bool = False,
                     runner: Optional[QuadratureRunner] = None) -> PropagatorValue:
    """
    时序涂抹 Wightman 函数

    正向 W_Δt(p,q;d,d2) 取 t₁ > t₂ 部分；反向 W_{−Δt}(p,q;d,d2) = W_Δt(q,p;d2,d)

    Args:
        direction: 正向或反向
        d: 第一个探测器
        d2: 第二个探测器
        s: 符号对
        same_system: 是否同一探测器
        runner: 残差积分执行器

    Returns:
        取值；含数值积分残差时 method 为 QUADRATURE
    """
    _check_pair(d, d2, same_system)
    runner = runner or _default_runner
    if direction == OrderDirection.BWD:
        d, d2, s = d2, d, s.swapped()
        kind = PropagatorKind.WIGHTMAN_BWD
    else:
        kind = PropagatorKind.WIGHTMAN_FWD

    closed = all(residual_is_closed(k) for k in pair_kernels(d, d2, s))
    method = EvaluationMethod.CLOSED_FORM if closed else EvaluationMethod.QUADRATURE
    return PropagatorValue(ordered_forward_sum(d, d2, s, runner), kind, method)


def hadamard(d: DetectorParams, d2: DetectorParams, s: SignPair,
             same_system: bool = False) -> PropagatorValue:
    """Hadamard 函数 H = W(p,q;d,d2) + W(q,p;d2,d)"""
    _check_pair(d, d2, same_system)
    return PropagatorValue(hadamard_sum(d, d2, s), PropagatorKind.HADAMARD)


def causal(d: DetectorParams, d2: DetectorParams, s: SignPair,
           same_system: bool = False) -> PropagatorValue:
    """因果传播子 E，满足 iE = W(p,q;d,d2) − W(q,p;d2,d)"""
    _check_pair(d, d2, same_system)
    return PropagatorValue(causal_sum(d, d2, s), PropagatorKind.CAUSAL)


def retarded(d: DetectorParams, d2: DetectorParams, s: SignPair,
             same_system: bool = False) -> PropagatorValue:
    """
    推迟传播子 G_R

    Raises:
        UnsupportedSmearingError: 高斯项 α 不一致或探测器内中心不一致
    """
    _check_pair(d, d2, same_system)
    return PropagatorValue(retarded_sum(d, d2, s), PropagatorKind.RETARDED)


def advanced(d: DetectorParams, d2: DetectorParams, s: SignPair,
             same_system: bool = False) -> PropagatorValue:
    """超前传播子 G_A(p,q;d,d2) = G_R(q,p;d2,d)"""
    _check_pair(d, d2, same_system)
    return PropagatorValue(retarded_sum(d2, d, s.swapped()), PropagatorKind.ADVANCED)


def symmetric(d: DetectorParams, d2: DetectorParams, s: SignPair,
              same_system: bool = False) -> PropagatorValue:
    """对称传播子 Δ = G_R + G_A"""
    _check_pair(d, d2, same_system)
    value = retarded_sum(d, d2, s) + retarded_sum(d2, d, s.swapped())
    return PropagatorValue(value, PropagatorKind.SYMMETRIC)


def feynman(d: DetectorParams, d2: DetectorParams, s: SignPair,
            same_system: bool = False) -> PropagatorValue:
    """Feynman 传播子 G_F = ½H + (i/2)Δ"""
    _check_pair(d, d2, same_system)
    delta = retarded_sum(d, d2, s) + retarded_sum(d2, d, s.swapped())
    value = 0.5 * hadamard_sum(d, d2, s) + 0.5j * delta
    return PropagatorValue(value, PropagatorKind.FEYNMAN)


_CLOSED_FORMS: Dict[PropagatorKind, Callable[..., PropagatorValue]] = {
    PropagatorKind.WIGHTMAN: wightman,
    PropagatorKind.HADAMARD: hadamard,
    PropagatorKind.CAUSAL: causal,
    PropagatorKind.RETARDED: retarded,
    PropagatorKind.ADVANCED: advanced,
    PropagatorKind.SYMMETRIC: symmetric,
    PropagatorKind.FEYNMAN: feynman,
}


def evaluate_propagator(kind: PropagatorKind, d: DetectorParams, d2: DetectorParams,
                        s: SignPair, same_system: bool = False) -> PropagatorValue:
    """按种类分派到对应的闭式求值"""
    if kind == PropagatorKind.WIGHTMAN_FWD:
        return wightman_ordered(OrderDirection.FWD, d, d2, s, same_system)
    if kind == PropagatorKind.WIGHTMAN_BWD:
        return wightman_ordered(OrderDirection.BWD, d, d2, s, same_system)
    return _CLOSED_FORMS[kind](d, d2, s, same_system)
