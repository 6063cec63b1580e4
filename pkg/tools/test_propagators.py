#!/usr/bin/env python3
"""
涂抹传播子测试 - 闭式与数值参照、传播子之间的恒等式
"""
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import special

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.common.errors import InvalidDetectorError, MissingScalarError, UnsupportedSmearingError
from src.field.detector_params import (
    MINUS_PLUS,
    PLUS_PLUS,
    DetectorParams,
    GaussTerm,
    OrderDirection,
    PropagatorKind,
    PropagatorSet,
    SignPair,
)
from src.field.oracles import evaluate_oracle, ordered_forward_time_oracle, wightman_oracle
from src.field.propagators import (
    advanced,
    causal,
    evaluate_propagator,
    feynman,
    hadamard,
    retarded,
    symmetric,
    wightman,
    wightman_ordered,
)

PLUS_MINUS = SignPair(1, -1)
MINUS_MINUS = SignPair(-1, -1)


def _detector(omega=1.0, T=1.0, alpha=1.0, centre=(0.0, 0.0, 0.0), tbar=0.0):
    return DetectorParams.single(3, omega, T, alpha, centre=centre, temporal_centre=tbar)


def test_detector_validation():
    with pytest.raises(InvalidDetectorError):
        _detector(T=0.0)
    with pytest.raises(InvalidDetectorError):
        _detector(omega=-1.0)
    with pytest.raises(InvalidDetectorError):
        GaussTerm(1.0, 0.0)
    with pytest.raises(InvalidDetectorError):
        SignPair(2, 1)
    assert SignPair.parse("-+") == MINUS_PLUS
    assert PLUS_MINUS.conjugated() == PLUS_MINUS
    assert MINUS_PLUS.swapped() == PLUS_MINUS


def test_same_system_wightman_same_signs_closed_form():
    """W(Λ⁺, Λ⁺) = e^{−(TΩ)²/2}/(2π²(β + 2T²))"""
    for omega, T, alpha in ((1.0, 1.0, 1.0), (2.0, 1 / 3, 4.0), (0.5, 0.1, 100.0)):
        d = _detector(omega, T, alpha)
        beta = 2.0 / alpha
        expected = math.exp(-(T * omega) ** 2 / 2) / (2 * math.pi ** 2 * (beta + 2 * T ** 2))
        assert wightman(d, d, PLUS_PLUS, True).value == pytest.approx(expected, rel=1e-13)


def test_gapless_signs_irrelevant():
    d = _detector(omega=0.0, T=0.5, alpha=2.0)
    assert wightman(d, d, PLUS_MINUS, True).value == pytest.approx(wightman(d, d, PLUS_PLUS, True).value, rel=1e-14)


def test_wightman_closed_vs_oracle():
    d = _detector()
    same_cases = [(d, d, s) for s in (PLUS_PLUS, MINUS_PLUS, PLUS_MINUS)]
    other = _detector(centre=(1.0, 0.0, 0.0))
    cross_cases = [(d, other, s) for s in (PLUS_PLUS, MINUS_PLUS)]
    for d1, d2, s in same_cases + cross_cases:
        closed = wightman(d1, d2, s, d1 is d2).value
        assert closed == pytest.approx(wightman_oracle(d1, d2, s), rel=1e-8)


def test_small_separation_series_path():
    d = _detector()
    close = _detector(centre=(1e-4, 0.0, 0.0))
    assert wightman(d, close, PLUS_PLUS).value == pytest.approx(wightman_oracle(d, close, PLUS_PLUS), rel=1e-8)


def test_wightman_hermiticity():
    """W(p,q;d,d')* = W(−q,−p;d',d)"""
    rng = np.random.default_rng(17)
    for _ in range(50):
        d1 = _detector(rng.uniform(0, 3), rng.uniform(0.1, 1.5), rng.uniform(0.5, 5),
                       tbar=rng.uniform(-1, 1))
        d2 = _detector(rng.uniform(0, 3), rng.uniform(0.1, 1.5), rng.uniform(0.5, 5),
                       centre=(rng.uniform(0.2, 3), 0.0, 0.0), tbar=rng.uniform(-1, 1))
        s = SignPair(int(rng.choice([-1, 1])), int(rng.choice([-1, 1])))
        lhs = np.conj(wightman(d1, d2, s).value)
        rhs = wightman(d2, d1, s.conjugated()).value
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-300)


def test_forward_ordered_same_signs_closed_form():
    """W_Δt(Λ⁺, Λ⁺) = e^{−(ΩT)²/2}(1 − i√2T/√β)/(4π²(β + 2T²))"""
    omega, T, alpha = 1.0, 1 / 3, 1.0
    d = _detector(omega, T, alpha)
    beta = 2.0 / alpha
    expected = (math.exp(-(omega * T) ** 2 / 2) * (1 - 1j * math.sqrt(2) * T / math.sqrt(beta))
                / (4 * math.pi ** 2 * (beta + 2 * T ** 2)))
    value = wightman_ordered(OrderDirection.FWD, d, d, PLUS_PLUS, True)
    assert value.value == pytest.approx(expected, rel=1e-13)
    assert value.kind == PropagatorKind.WIGHTMAN_FWD


def test_forward_plus_backward_gives_wightman():
    """W(p,q) = W_Δt(p,q) + W_Δt(−q,−p)*"""
    d = _detector(1.0, 0.5, 4.0)
    for s, rel in ((PLUS_PLUS, 1e-12), (MINUS_MINUS, 1e-12), (PLUS_MINUS, 1e-6)):
        forward = wightman_ordered(OrderDirection.FWD, d, d, s, True).value
        mirrored = wightman_ordered(OrderDirection.FWD, d, d, s.conjugated(), True).value
        assert forward + np.conj(mirrored) == pytest.approx(wightman(d, d, s, True).value, rel=rel)


def test_backward_is_swapped_forward():
    d = _detector()
    d2 = _detector(centre=(2.0, 0.0, 0.0))
    backward = wightman_ordered(OrderDirection.BWD, d, d2, PLUS_PLUS).value
    forward = wightman_ordered(OrderDirection.FWD, d2, d, PLUS_PLUS).value
    assert backward == forward


def test_mixed_sign_ordered_against_time_oracle():
    d = _detector(1.0, 0.5, 4.0)
    closed = wightman_ordered(OrderDirection.FWD, d, d, MINUS_PLUS, True).value
    reference = ordered_forward_time_oracle(d, d, MINUS_PLUS)
    assert closed == pytest.approx(reference, rel=1e-5)


def test_hadamard_and_causal_definitions():
    d = _detector()
    d2 = _detector(centre=(3.0, 0.0, 0.0))
    for a, b, same in ((d, d, True), (d, d2, False)):
        for s in (PLUS_PLUS, PLUS_MINUS, MINUS_PLUS):
            forward = wightman(a, b, s, same).value
            reverse = wightman(b, a, s.swapped(), same).value
            assert hadamard(a, b, s, same).value == pytest.approx(forward + reverse, rel=1e-10, abs=1e-300)
            assert 1j * causal(a, b, s, same).value == pytest.approx(forward - reverse, rel=1e-10, abs=1e-300)


def test_same_system_equal_signs_causal_vanishes():
    d = _detector()
    assert causal(d, d, PLUS_PLUS, True).value == 0


def test_hadamard_against_oracle_separated():
    d = _detector()
    d2 = _detector(centre=(3.0, 0.0, 0.0))
    oracle = evaluate_oracle(PropagatorKind.HADAMARD, d, d2, PLUS_PLUS).value
    assert hadamard(d, d2, PLUS_PLUS).value == pytest.approx(oracle, rel=1e-8)


def test_advanced_retarded_relations():
    d = _detector()
    d2 = _detector(omega=1.5, T=0.7, centre=(1.0, 0.0, 0.0), tbar=0.3)
    for s in (PLUS_PLUS, MINUS_PLUS):
        assert advanced(d, d2, s).value == pytest.approx(retarded(d2, d, s.swapped()).value, rel=1e-10)
        delta = symmetric(d, d2, s).value
        assert delta == pytest.approx(retarded(d, d2, s).value + advanced(d, d2, s).value, rel=1e-9)
        expected_feynman = 0.5 * hadamard(d, d2, s).value + 0.5j * delta
        assert feynman(d, d2, s).value == pytest.approx(expected_feynman, rel=1e-9)


def test_retarded_minus_advanced_is_causal():
    d = _detector()
    for s in (PLUS_PLUS, PLUS_MINUS, MINUS_PLUS):
        difference = retarded(d, d, s, True).value - advanced(d, d, s, True).value
        assert difference == pytest.approx(causal(d, d, s, True).value, rel=1e-9, abs=1e-14)


@pytest.mark.parametrize("kind", [PropagatorKind.RETARDED, PropagatorKind.SYMMETRIC])
def test_retarded_family_against_oracle(kind):
    for omega, T, alpha_invsqrt, L in ((0.5, 1 / 3, 1.0, 0.5), (2.0, 1.0, 1.0, 3.0), (1.0, 1 / 3, 0.1, 0.5)):
        alpha = 1.0 / alpha_invsqrt ** 2
        d = _detector(omega, T, alpha)
        d2 = _detector(omega, T, alpha, centre=(L, 0.0, 0.0))
        closed = retarded(d, d2, PLUS_PLUS) if kind == PropagatorKind.RETARDED else symmetric(d, d2, PLUS_PLUS)
        oracle = evaluate_oracle(kind, d, d2, PLUS_PLUS).value
        assert closed.value == pytest.approx(oracle, rel=1e-6, abs=1e-14)


def test_same_system_ratio_is_width_ratio():
    """|Δ/H| = T√α"""
    for T in (0.01, 0.1, 1 / 3, 1.0):
        for alpha in (0.01, 1.0, 100.0):
            d = _detector(1.0, T, alpha)
            ratio = abs(symmetric(d, d, PLUS_PLUS, True).value) / abs(hadamard(d, d, PLUS_PLUS, True).value)
            assert ratio == pytest.approx(T * math.sqrt(alpha), rel=1e-10)


def test_separated_ratio_at_matching_delays():
    """T = T' = α = 1，Δt̄ = L 时 |Δ/H| = e^{L²}|erf L / erfi L|"""
    for L in (0.5, 1.0, 2.0):
        d = _detector(tbar=L)
        d2 = _detector(centre=(L, 0.0, 0.0))
        ratio = abs(symmetric(d, d2, PLUS_PLUS).value) / abs(hadamard(d, d2, PLUS_PLUS).value)
        expected = math.exp(L ** 2) * abs(special.erf(L) / special.erfi(L))
        assert ratio == pytest.approx(expected, rel=1e-8)
        assert ratio >= 1.0


def _oracle_grid(count=20, seed=11):
    omegas = [0.5 * k for k in range(9)]
    grid = [(omega, T, a, L) for omega in omegas for T in (1 / 30, 1 / 3, 1.0) for a in (0.1, 1.0) for L in (0.5, 3.0)]
    rng = np.random.default_rng(seed)
    return [grid[i] for i in sorted(rng.choice(len(grid), size=count, replace=False))]


@pytest.mark.parametrize("s", [PLUS_PLUS, MINUS_PLUS], ids=["++", "-+"])
@pytest.mark.parametrize("omega,T,alpha_invsqrt,L", _oracle_grid())
def test_all_kinds_against_oracle_grid(omega, T, alpha_invsqrt, L, s):
    alpha = 1.0 / alpha_invsqrt ** 2
    d = _detector(omega, T, alpha)
    d2 = _detector(omega, T, alpha, centre=(L, 0.0, 0.0))
    for kind in PropagatorKind:
        closed = evaluate_propagator(kind, d, d2, s).value
        oracle = evaluate_oracle(kind, d, d2, s).value
        # 低于参照积分绝对容差的量只比较绝对误差
        assert closed == pytest.approx(oracle, rel=1e-6, abs=1e-12), kind


def test_gaussian_suppression_of_hadamard():
    d = _detector(omega=12.0)
    assert abs(hadamard(d, d, PLUS_PLUS, True).value) < 1e-25


def test_unsupported_smearing():
    d = _detector(alpha=1.0)
    d2 = _detector(alpha=2.0, centre=(1.0, 0.0, 0.0))
    with pytest.raises(UnsupportedSmearingError):
        retarded(d, d2, PLUS_PLUS)
    with pytest.raises(InvalidDetectorError):
        wightman(d, d2, PLUS_PLUS, same_system=True)


def test_multi_term_wightman_against_oracle():
    d = DetectorParams(3, 1.0, 0.5, (GaussTerm(1.0, 1.0), GaussTerm(0.5, 4.0)))
    d2 = DetectorParams(3, 1.0, 0.5, (GaussTerm(1.0, 2.0, (1.5, 0.0, 0.0)),))
    assert wightman(d, d2, MINUS_PLUS).value == pytest.approx(wightman_oracle(d, d2, MINUS_PLUS), rel=1e-8)


def test_propagator_set_lookup():
    props = PropagatorSet()
    d = _detector()
    props.put("11", PLUS_PLUS, wightman(d, d, PLUS_PLUS, True))
    assert ("11", "++", PropagatorKind.WIGHTMAN) in props
    assert props.get("11", PLUS_PLUS, PropagatorKind.WIGHTMAN) == wightman(d, d, PLUS_PLUS, True).value
    with pytest.raises(MissingScalarError):
        props.get("22", PLUS_PLUS, PropagatorKind.WIGHTMAN)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
