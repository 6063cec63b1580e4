#!/usr/bin/env python3
"""
末态组装测试 - 单 qutrit、qubit-qutrit、约化态与自由演化
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.common.errors import InvalidDetectorError
from src.detectors.state_assembly import (
    EXCITATION,
    QUBIT_QUTRIT,
    StateOrder,
    UdwSystem,
    assemble_qubit_qutrit,
    assemble_single_qutrit,
    free_evolution,
    free_evolution_operator,
    initial_state,
    reduce_qutrit,
    strong_support_warnings,
)
from src.field.detector_params import PLUS_PLUS, DetectorParams, PropagatorKind
from src.linalg.matrix_ops import ground_projector, hermiticity_deviation
from src.measures.inequality import s_c
from src.scenarios.empirical import empirical_model
from src.scenarios.pentagram import build_pentagram

LAMBDA = 1e-4


def _qutrit(omega=1.0, T=1 / 3, alpha=1.0, centre=(0.0, 0.0, 0.0), coupling=LAMBDA):
    return DetectorParams.single(3, omega, T, alpha, centre=centre, coupling=coupling)


def _qubit(omega=1.0, T=1 / 3, alpha=1.0, coupling=LAMBDA):
    return DetectorParams.single(2, omega, T, alpha, coupling=coupling)


def _pair(L=0.5, qubit_coupling=LAMBDA):
    return UdwSystem((_qubit(coupling=qubit_coupling), _qutrit(centre=(L, 0.0, 0.0))))


def test_system_validation():
    with pytest.raises(InvalidDetectorError):
        UdwSystem((_qubit(),))
    with pytest.raises(InvalidDetectorError):
        UdwSystem((_qutrit(), _qubit()))
    with pytest.raises(InvalidDetectorError):
        UdwSystem((_qutrit(),), eta=0.0)
    with pytest.raises(InvalidDetectorError):
        assemble_qubit_qutrit(UdwSystem((_qutrit(),)))


def test_single_qutrit_state_structure():
    bundle = assemble_single_qutrit(UdwSystem((_qutrit(),)))
    rho = bundle.rho
    assert bundle.order == StateOrder.SECOND_ORDER
    assert bundle.trace_deviation() <= 1e-15
    assert hermiticity_deviation(rho) == 0.0
    assert rho[1, 1].imag == 0.0 and rho[1, 1].real >= 0.0
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 2), (2, 1)):
        assert rho[i, j] == 0

    w = bundle.props.get("11", EXCITATION, PropagatorKind.WIGHTMAN)
    w_bar = bundle.props.get("11", PLUS_PLUS, PropagatorKind.WIGHTMAN_FWD)
    assert rho[1, 1] == pytest.approx(2 * w.real, rel=1e-15)
    assert rho[0, 2] == pytest.approx(-2 * w_bar, rel=1e-15)


def test_single_qutrit_gaussian_suppression():
    rho = assemble_single_qutrit(UdwSystem((_qutrit(omega=8.0, T=1.0),))).rho
    assert np.max(np.abs(rho - ground_projector(3))) <= 1e-16


def test_single_qutrit_scales_with_coupling():
    small = assemble_single_qutrit(UdwSystem((_qutrit(coupling=1e-4),))).rho
    large = assemble_single_qutrit(UdwSystem((_qutrit(coupling=1e-3),))).rho
    assert large[1, 1] == pytest.approx(100 * small[1, 1], rel=1e-12)
    assert large[0, 2] == pytest.approx(100 * small[0, 2], rel=1e-12)


def test_qubit_qutrit_state_structure():
    bundle = assemble_qubit_qutrit(_pair())
    rho = bundle.rho
    assert bundle.shape == QUBIT_QUTRIT
    assert bundle.trace_deviation() <= 1e-14
    assert hermiticity_deviation(rho) <= 1e-12
    w12 = bundle.props.get("12", EXCITATION, PropagatorKind.WIGHTMAN)
    w21 = bundle.props.get("21", EXCITATION, PropagatorKind.WIGHTMAN)
    assert w12 == pytest.approx(np.conj(w21), rel=1e-10)
    assert rho[4, 2] == pytest.approx(np.sqrt(2) * w12, rel=1e-15)

    nonzero = {(2, 2), (4, 4), (2, 4), (4, 2), (1, 5), (5, 1), (3, 5), (5, 3), (5, 5)}
    for i in range(6):
        for j in range(6):
            if (i, j) not in nonzero:
                assert rho[i, j] == 0


def test_reduced_state_matches_single_qutrit():
    joint = assemble_qubit_qutrit(_pair(L=0.5))
    reduced = reduce_qutrit(joint)
    single = assemble_single_qutrit(UdwSystem((_qutrit(centre=(0.5, 0.0, 0.0)),)))
    assert np.allclose(reduced.rho, single.rho, rtol=0, atol=1e-14)
    assert reduced.shape is None
    assert all(key[0] == "22" for key, _ in reduced.props)


def test_reduced_state_independent_of_qubit_coupling():
    a = reduce_qutrit(assemble_qubit_qutrit(_pair(qubit_coupling=LAMBDA))).rho
    b = reduce_qutrit(assemble_qubit_qutrit(_pair(qubit_coupling=np.sqrt(2) * LAMBDA))).rho
    assert np.allclose(a, b, rtol=0, atol=1e-15)


def test_initial_states():
    single = initial_state(UdwSystem((_qutrit(),)))
    assert single.order == StateOrder.INITIAL
    assert np.array_equal(single.rho, ground_projector(3))
    joint = initial_state(_pair())
    assert joint.rho.shape == (6, 6)
    assert joint.rho[5, 5] == 1.0
    assert joint.min_eigenvalue() == pytest.approx(0.0, abs=1e-15)


def test_free_evolution_is_unitary_phase():
    detectors = (_qubit(omega=0.7), _qutrit(omega=1.3))
    unitary = free_evolution_operator(detectors, 2.5)
    assert unitary.shape == (6, 6)
    assert np.allclose(unitary @ unitary.conj().T, np.eye(6), atol=1e-15)
    rho = assemble_qubit_qutrit(_pair()).rho
    evolved = free_evolution(rho, detectors, 2.5)
    assert np.allclose(np.diag(evolved), np.diag(rho), rtol=0, atol=1e-15)


def test_free_evolution_leaves_measurements_invariant():
    """态与测量算符一同旋转时经验模型与 S_C 不变"""
    d = _qutrit(omega=0.0)
    rho = assemble_single_qutrit(UdwSystem((d,))).rho
    scen = build_pentagram(1)
    unitary = free_evolution_operator((_qutrit(omega=1.3),), 4.0)
    evolved = unitary @ rho @ unitary.conj().T
    rotated = scen.rotated(unitary)
    assert np.allclose(empirical_model(evolved, rotated).table, empirical_model(rho, scen).table,
                       rtol=0, atol=1e-12)
    assert s_c(evolved, rotated) == pytest.approx(s_c(rho, scen), abs=1e-10)


def test_strong_support_warning():
    wide = UdwSystem((DetectorParams.single(3, 0.5, 1.0, 4.0),))
    assert len(strong_support_warnings(wide)) == 1
    assert wide.measurement_time() == pytest.approx(7.0)
    sharp = UdwSystem((DetectorParams.single(3, 0.5, 0.1, 1.0),))
    assert strong_support_warnings(sharp) == []


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
