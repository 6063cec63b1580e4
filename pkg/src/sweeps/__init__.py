"""
参数扫描模块
"""
from .sweep_config import (
    SetupKind,
    OmegaGrid,
    SweepPoint,
    SweepConfig,
    preset,
    apply_overrides,
    load_sweep_config,
)
from .sweep_runner import (
    COLUMNS,
    SweepRow,
    evaluate_point,
    run_sweep,
    rows_to_frame,
    emit_csv,
    genuine_consistent,
    peak_abs,
)

__all__ = [
    'SetupKind',
    'OmegaGrid',
    'SweepPoint',
    'SweepConfig',
    'preset',
    'apply_overrides',
    'load_sweep_config',
    'COLUMNS',
    'SweepRow',
    'evaluate_point',
    'run_sweep',
    'rows_to_frame',
    'emit_csv',
    'genuine_consistent',
    'peak_abs',
]
