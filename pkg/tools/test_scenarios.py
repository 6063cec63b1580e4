#!/usr/bin/env python3
"""
测量场景测试 - 五角星角度组、经验模型、关联矩阵与模型文件
"""
import json
import math
import sys
from pathlib import Path

import numpy as np
import pytest

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.common.errors import (
    ConfigurationError,
    DimensionMismatchError,
    InvalidStateError,
    ScenarioConstructionError,
    ScenarioDomainError,
)
from src.linalg.matrix_ops import ground_projector
from src.scenarios.empirical import (
    EmpiricalModel,
    Scenario,
    deterministic_model,
    empirical_model,
    incidence,
    validate_model,
)
from src.scenarios.model_io import load_model, model_to_document, parse_probability, save_model, scenario_of
from src.scenarios.pentagram import (
    PENTAGRAM_CONTEXTS,
    AngleSet,
    build_pentagram,
    check_scenario,
    get_angle_set,
    inspect_scenario,
    kcbs_cycle_contexts,
    phi,
    projector_from_angles,
    solve_alpha3,
)
from src.utils.common import parse_real

KCBS_MODEL_PATH = project_root / "config" / "models" / "kcbs_example.json"

# 由闭合条件推导出的 α₃
EXPECTED_ALPHA3 = {1: 1.300008950399, 2: 1.271078286382, 3: 1.121835690708}


def test_projector_examples():
    assert np.allclose(projector_from_angles(math.pi / 2, math.pi / 2), np.diag([0, 0, 1]), atol=1e-16)
    assert np.allclose(projector_from_angles(0.0, 1.234), np.diag([0, 1, 0]), atol=1e-16)

    alpha, theta = math.pi / 4, math.pi / 3
    v = np.array([math.sin(alpha) * math.cos(theta), math.cos(alpha), math.sin(alpha) * math.sin(theta)])
    p = projector_from_angles(alpha, theta)
    assert np.allclose(p, np.outer(v, v), rtol=0, atol=1e-15)
    assert np.allclose(p @ p, p, atol=1e-15)


def test_phi_domain():
    with pytest.raises(ScenarioDomainError):
        phi(0.1, 0.1)
    assert phi(math.pi / 2, 0.3) == pytest.approx(math.pi / 2)


def test_solve_alpha3_quarter_turn_reduction():
    alpha0, alpha1 = 0.4, 1.1
    t0, t1 = math.tan(alpha0), math.tan(alpha1)
    expected = math.atan2(1.0, t0 * t1 / math.sqrt(t0 ** 2 + t1 ** 2))
    assert solve_alpha3(alpha0, alpha1, math.pi / 2, 0.0, 0.0) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("set_id", [1, 2, 3])
def test_printed_angle_sets(set_id):
    angles = get_angle_set(set_id)
    assert angles.alpha3_derived
    assert angles.alphas[3] == pytest.approx(EXPECTED_ALPHA3[set_id], abs=1e-9)
    assert angles.ground_sum == pytest.approx(2.0, abs=1e-6)
    assert angles.cross_term <= 1e-9

    report = check_scenario(set_id)
    assert report.is_valid, report.issues
    assert max(report.context_commutators.values()) <= 1e-9
    assert min(report.non_context_commutators.values()) >= 1e-3
    assert report.idempotency <= 1e-10
    assert len(report.non_context_commutators) == 5


def test_winding_angle_reported():
    report = check_scenario(1)
    assert any("α1" in warning for warning in report.warnings)
    assert report.reduced_alphas[1] == pytest.approx(math.fmod(2.9 * math.pi, 2 * math.pi))


def test_unknown_angle_set():
    with pytest.raises(ConfigurationError):
        get_angle_set(4)


def test_build_pentagram():
    scen = build_pentagram(1)
    assert scen.n_measurements == 5
    assert scen.contexts == PENTAGRAM_CONTEXTS
    assert scen.dim == 3
    for i in range(5):
        b = scen.measurement_operator(i)
        assert np.allclose(b @ b, np.eye(3), atol=1e-12)


def test_perturbed_set_rejected():
    perturbed = get_angle_set(1).perturbed(0, 0.01)
    report = inspect_scenario(perturbed)
    assert not report.is_valid
    with pytest.raises(ScenarioConstructionError) as excinfo:
        build_pentagram(perturbed)
    assert excinfo.value.constraint == "context_commutator"


def test_custom_angle_set_requires_five():
    with pytest.raises(ScenarioDomainError):
        AngleSet.custom(0.0, [0.1, 0.2])


def test_incidence_structure():
    scen = build_pentagram(2)
    m = incidence(scen)
    assert (m.rows, m.cols) == (20, 32)
    assert np.all(m.bits.sum(axis=0) == 5)
    for c in range(5):
        assert np.all(m.bits[4 * c:4 * c + 4].sum(axis=0) == 1)
    assert len({m.bits[:, g].tobytes() for g in range(32)}) == 32


def test_incidence_single_context():
    toy = Scenario(2, ((0, 1),))
    m = incidence(toy)
    assert (m.rows, m.cols) == (4, 4)
    assert np.array_equal(m.bits.sum(axis=0), np.ones(4))
    assert np.array_equal(m.bits.sum(axis=1), np.ones(4))


def test_scenario_validation():
    with pytest.raises(ScenarioDomainError):
        Scenario(1, ())
    with pytest.raises(ScenarioDomainError):
        Scenario(3, ((0, 0),))
    with pytest.raises(DimensionMismatchError):
        Scenario(3, ((0, 1),), (np.eye(3),))


def test_ground_state_model():
    scen = build_pentagram(1)
    model = empirical_model(ground_projector(3), scen)
    report = validate_model(model)
    assert report.is_valid
    assert np.allclose(model.table.sum(axis=1), 1.0, atol=1e-12)
    # 语境内投影正交，(−1, −1) 不出现
    assert np.allclose(model.table[:, 0], 0.0, atol=1e-12)


def test_maximally_mixed_model():
    scen = build_pentagram(3)
    model = empirical_model(np.eye(3) / 3, scen)
    report = validate_model(model)
    assert report.is_valid
    assert report.max_marginal_mismatch <= 1e-12
    assert np.all(model.table[:, 1:] > 0)


def test_negative_probability_rejected():
    scen = build_pentagram(1)
    bad = -ground_projector(3)
    with pytest.raises(InvalidStateError):
        empirical_model(bad, scen)


def test_deterministic_model_is_valid():
    scen = build_pentagram(1)
    model = deterministic_model(scen, 0b10110)
    assert validate_model(model).is_valid
    assert np.all(model.table.sum(axis=1) == 1.0)


def test_kcbs_model_passes_checks():
    model = load_model(KCBS_MODEL_PATH)
    assert model.scenario_id == "kcbs_example"
    assert model.contexts == kcbs_cycle_contexts()
    assert model.table[0, 1] == pytest.approx(1 / 9)
    report = validate_model(model)
    assert report.is_valid, report.issues
    assert report.quality_score == 100.0


def test_model_checks_flag_problems():
    model = load_model(KCBS_MODEL_PATH)
    short = EmpiricalModel("short", 5, model.contexts, model.table.copy())
    short.table[2] = [0.0, 0.3, 0.3, 0.3]
    report = validate_model(short)
    assert not report.is_valid
    assert report.row_sums[2] == pytest.approx(0.9)

    signalling = EmpiricalModel("signalling", 5, model.contexts, model.table.copy())
    # (0,1) 中测量 1 的边缘分布改变，与 (1,2) 不一致
    signalling.table[0] = [0.0, 1 / 3, 4 / 9, 2 / 9]
    report = validate_model(signalling)
    assert not report.is_valid
    assert report.max_marginal_mismatch > 1e-3


def test_model_mixing():
    scen = build_pentagram(1)
    a = deterministic_model(scen, 3)
    b = deterministic_model(scen, 17)
    mixed = a.mix(b, 0.25)
    assert np.allclose(mixed.table, 0.25 * a.table + 0.75 * b.table)
    assert validate_model(mixed).is_valid


def test_parse_probability():
    assert parse_probability("2/9") == pytest.approx(2 / 9)
    assert parse_probability(0.5) == 0.5
    assert parse_probability(" 1 ") == 1.0
    with pytest.raises(ConfigurationError):
        parse_probability("a/b")
    with pytest.raises(ConfigurationError):
        parse_probability(True)
    with pytest.raises(ConfigurationError):
        parse_probability("1/0")
    assert parse_probability("1e-3") == parse_real("1e-3")


def test_model_file_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_model(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"measurements": 5, "rows": []}), encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_model(broken)


def test_save_and_reload_model(tmp_path):
    model = load_model(KCBS_MODEL_PATH)
    path = tmp_path / "models" / "copy.json"
    save_model(model, path)
    reloaded = load_model(path)
    assert np.allclose(reloaded.table, model.table, rtol=0, atol=1e-16)
    assert model_to_document(reloaded)["contexts"] == [list(c) for c in model.contexts]
    scen = scenario_of(reloaded)
    assert not scen.has_operators
    assert scen.n_measurements == 5


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
