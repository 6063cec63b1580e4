#!/usr/bin/env python3
"""
参数扫描测试 - 配置、预设、执行器、CSV 输出与命令行
"""
import math
import sys
from pathlib import Path

import pytest

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "tools"))

import run_harvest
from src.common.errors import ConfigurationError, UnknownPresetError
from src.sweeps.sweep_config import (
    OmegaGrid,
    SetupKind,
    SweepConfig,
    SweepPoint,
    apply_overrides,
    load_sweep_config,
    preset,
)
from src.sweeps.sweep_runner import (
    COLUMNS,
    SweepRow,
    emit_csv,
    genuine_consistent,
    peak_abs,
    rows_to_frame,
    run_sweep,
)

KCBS_MODEL_PATH = project_root / "config" / "models" / "kcbs_example.json"
SWEEP_YAML = project_root / "config" / "harvest_sweep.yaml"


def _small_single(workers=1, T=(1 / 3,)):
    return SweepConfig(omega_grid=OmegaGrid(0.0, 1.0, 2), temporal_widths=list(T), alpha_invsqrt=[1.0],
                       workers=workers, name="small-single")


def _small_pair(workers=1):
    return SweepConfig(setup=SetupKind.QUBIT_QUTRIT, omega_grid=OmegaGrid(0.0, 2.0, 3), temporal_widths=[1 / 3],
                       alpha_invsqrt=[1.0], separations=[0.5], workers=workers, name="small-pair")


class TestSweepConfig:
    """扫描配置"""

    def test_presets(self):
        first = preset("figure1")
        assert first.setup == SetupKind.SINGLE_QUTRIT
        assert first.n_points == 81 * 4 * 2
        second = preset("figure2")
        assert second.setup == SetupKind.QUBIT_QUTRIT
        assert second.separations == [0.5, 3.0]
        assert second.n_points == 81 * 4 * 2 * 2
        assert preset("figure2_sqrt2").qubit_coupling_ratio == pytest.approx(math.sqrt(2))
        with pytest.raises(UnknownPresetError):
            preset("figure9")

    def test_point_order_is_omega_major(self):
        cfg = SweepConfig(omega_grid=OmegaGrid(0.0, 1.0, 2), temporal_widths=[0.1, 1.0], alpha_invsqrt=[1.0])
        points = list(cfg.points())
        assert [p.omega for p in points] == [0.0, 0.0, 1.0, 1.0]
        assert [p.temporal_width for p in points] == [0.1, 1.0, 0.1, 1.0]
        assert SweepPoint(0.0, 1.0, 0.1).alpha == pytest.approx(100.0)

    def test_omega_grid(self):
        grid = OmegaGrid.parse("0:4:81")
        assert grid.values()[1] == pytest.approx(0.05)
        assert OmegaGrid.parse({'min': 1, 'max': 2, 'count': 3}).values().tolist() == [1.0, 1.5, 2.0]
        with pytest.raises(ConfigurationError):
            OmegaGrid(0.0, 1.0, 1)
        with pytest.raises(ConfigurationError):
            OmegaGrid(-1.0, 1.0, 3)

    def test_overrides(self):
        cfg = apply_overrides(SweepConfig(), {'T': "1/30,1", 'lambda': "1e-3", 'angle_set': 2, 'out': None})
        assert cfg.temporal_widths == [pytest.approx(1 / 30), 1.0]
        assert cfg.coupling == pytest.approx(1e-3)
        assert cfg.angle_set == 2
        assert cfg.output_path == SweepConfig().output_path

    @pytest.mark.parametrize("overrides", [
        {'unknown': 1},
        {'lambda': "abc"},
        {'angle_set': 4},
        {'setup': "qubit_qutrit"},
        {'T': "0,1"},
    ])
    def test_invalid_overrides(self, overrides):
        with pytest.raises(ConfigurationError):
            apply_overrides(SweepConfig(), overrides)

    def test_load_yaml(self):
        cfg = load_sweep_config(SWEEP_YAML)
        assert cfg.name == "figure1_set1"
        assert cfg.temporal_widths[0] == pytest.approx(1 / 30)
        assert cfg.n_points == 81 * 4 * 2
        assert cfg.output_path == "results/figure1_set1.csv"

    def test_load_errors(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_sweep_config(tmp_path / "missing.yaml")
        bad = tmp_path / "bad.yaml"
        bad.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_sweep_config(bad)


class TestSweepRunner:
    """扫描执行"""

    def test_single_qutrit_rows(self):
        cfg = _small_single()
        rows = run_sweep(cfg, write=False, progress=False)
        assert len(rows) == 2
        assert all(not row.error for row in rows)
        assert all(row.negativity_over_lambda2 is None for row in rows)
        assert rows[0].omega == 0.0
        assert rows[0].delta_cf_over_lambda2 > 0.0
        assert rows[0].ratio == pytest.approx(1 / 3, rel=1e-8)
        assert all(genuine_consistent(row, cfg.threshold) for row in rows)

    def test_narrow_switching_is_genuine(self):
        rows = run_sweep(_small_single(T=(0.05,)), write=False, progress=False)
        assert rows[0].ratio == pytest.approx(0.05, rel=1e-8)
        assert rows[0].genuine

    def test_qubit_qutrit_rows(self):
        cfg = _small_pair()
        rows = run_sweep(cfg, write=False, progress=False)
        assert len(rows) == 3
        assert all(not row.error for row in rows)
        assert all(row.L == 0.5 for row in rows)
        assert all(row.negativity_over_lambda2 >= 0.0 for row in rows)
        assert all(genuine_consistent(row, cfg.threshold) for row in rows)
        assert peak_abs(rows, "mana_over_lambda2") >= 0.0

    def test_csv_is_deterministic(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_sweep(_small_pair(workers=1), write=False, progress=False), first)
        emit_csv(run_sweep(_small_pair(workers=3), write=False, progress=False), second)
        assert first.read_bytes() == second.read_bytes()
        lines = first.read_text(encoding="utf-8").split("\n")
        assert lines[0] == ",".join(COLUMNS)
        assert len([line for line in lines if line]) == 4

    def test_csv_edge_cases(self, tmp_path):
        empty = tmp_path / "empty.csv"
        emit_csv([], empty)
        assert empty.read_text(encoding="utf-8") == ",".join(COLUMNS) + "\n"

        rows = run_sweep(_small_single(), write=False, progress=False)[:1]
        single = tmp_path / "nested" / "one.csv"
        emit_csv(rows, single)
        assert single.read_text(encoding="utf-8").count("\n") == 2
        assert not (tmp_path / "nested" / "one.csv.tmp").exists()

    def test_failed_row(self):
        row = SweepRow.failed(SweepPoint(1.0, 0.5, 1.0), "NumericalError: 测试")
        assert math.isnan(row.ratio)
        assert not row.genuine
        assert genuine_consistent(row, 0.1)
        assert rows_to_frame([row]).loc[0, "error"] == "NumericalError: 测试"
        assert math.isnan(peak_abs([row], "ratio"))


class TestPresetSweeps:
    """完整预设扫描"""

    def test_figure1_genuine_flags(self):
        cfg = apply_overrides(preset("figure1"), {'workers': 4})
        rows = run_sweep(cfg, write=False, progress=False)
        assert len(rows) == cfg.n_points
        assert all(not row.error for row in rows)
        unit = [row for row in rows if row.alpha_invsqrt == 1.0]
        assert unit
        for row in unit:
            assert row.ratio == pytest.approx(row.T, rel=1e-8)
            if row.genuine:
                assert row.T <= 0.1
        assert any(row.genuine for row in unit)
        assert all(genuine_consistent(row, cfg.threshold) for row in rows)

    def test_figure2_far_separation_has_no_negativity(self):
        cfg = apply_overrides(preset("figure2"), {'L': "50", 'workers': 4})
        rows = run_sweep(cfg, write=False, progress=False)
        assert all(not row.error for row in rows)
        assert all(row.L == 50.0 for row in rows)
        assert max(row.negativity_over_lambda2 for row in rows) <= 1e-12

    def test_large_gap_decay(self):
        cfg = apply_overrides(preset("figure1"), {'omega': "0:12:25", 'T': "1", 'lambda': "1e-2", 'workers': 4})
        rows = run_sweep(cfg, write=False, progress=False)
        for column in ("delta_cf_over_lambda2", "mana_over_lambda2"):
            peak = peak_abs(rows, column)
            assert peak > 0.0
            tail = [abs(getattr(row, column)) for row in rows if row.T * row.omega >= 10.0]
            assert tail
            assert max(tail) <= 1e-6 * peak


class TestCommandLine:
    """命令行"""

    def test_scenario_check(self, capsys):
        assert run_harvest.main(["scenario", "check", "1"]) == run_harvest.EXIT_OK
        assert "场景有效" in capsys.readouterr().out

    def test_cf_on_kcbs_model(self, capsys):
        assert run_harvest.main(["cf", str(KCBS_MODEL_PATH)]) == run_harvest.EXIT_OK
        assert "CF" in capsys.readouterr().out

    def test_cf_missing_file(self, tmp_path):
        assert run_harvest.main(["cf", str(tmp_path / "none.json")]) == run_harvest.EXIT_CONFIG

    def test_prop(self):
        argv = ["prop", "hadamard", "--params", "omega=1,T=1/3,alpha=1,same=true,oracle=false"]
        assert run_harvest.main(argv) == run_harvest.EXIT_OK
        assert run_harvest.main(["prop", "nonsense"]) == run_harvest.EXIT_CONFIG

    def test_sweep(self, tmp_path):
        out = tmp_path / "cli.csv"
        argv = ["sweep", "--omega", "0:1:2", "--T", "1/3", "--alpha-invsqrt", "1",
                "--out", str(out), "--workers", "1", "--no-progress"]
        assert run_harvest.main(argv) == run_harvest.EXIT_OK
        assert out.read_text(encoding="utf-8").count("\n") == 3

    def test_sweep_bad_override(self, tmp_path):
        argv = ["sweep", "--lambda", "-1", "--out", str(tmp_path / "x.csv"), "--no-progress"]
        assert run_harvest.main(argv) == run_harvest.EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
