#!/usr/bin/env python3
"""
参数扫描执行器
逐点组装末态并计算 ΔCF、mana、负性与收获判据，结果按 Ω 优先顺序写出 CSV
"""
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..common.errors import HarvestError, SweepOutputError
from ..contextuality.fraction import delta_cf
from ..detectors.state_assembly import (
    UdwSystem,
    assemble_qubit_qutrit,
    assemble_single_qutrit,
    reduce_qutrit,
)
from ..field.detector_params import DetectorParams
from ..linalg.matrix_ops import ground_projector
from ..measures.entanglement import negativity_second_order
from ..measures.harvesting import harvest_verdict
from ..measures.inequality import s_c
from ..measures.magic import mana
from ..scenarios.empirical import Scenario
from ..scenarios.pentagram import build_pentagram
from .sweep_config import SetupKind, SweepConfig, SweepPoint

logger = logging.getLogger(__name__)


@dataclass
class SweepRow:
    """扫描结果的一行；数值除以 λ² 的列对应按 λ² 归一的量"""
    omega: float
    T: float
    alpha_invsqrt: float
    L: Optional[float]
    delta_cf_over_lambda2: float
    mana_over_lambda2: float
    negativity_over_lambda2: Optional[float]
    abs_sym_prop: float
    abs_hadamard: float
    ratio: float
    genuine: bool
    s_c_delta: float
    error: str = ""

    @classmethod
    def failed(cls, point: SweepPoint, message: str) -> "SweepRow":
        nan = float('nan')
        return cls(point.omega, point.temporal_width, point.alpha_invsqrt, point.separation,
                   nan, nan, nan, nan, nan, nan, False, nan, message)


COLUMNS = [f.name for f in fields(SweepRow)]


def _detector(cfg: SweepConfig, point: SweepPoint, dim: int, coupling: float,
              centre=(0.0, 0.0, 0.0)) -> DetectorParams:
    return DetectorParams.single(dim, point.omega, point.temporal_width, point.alpha,
                                 centre=centre, temporal_centre=cfg.tbar, coupling=coupling)


def evaluate_point(cfg: SweepConfig, point: SweepPoint, scen: Scenario) -> SweepRow:
    """
    计算单个网格点，模块异常记录在 error 列中而不向外抛出

    Args:
        cfg: 扫描配置
        point: 网格点
        scen: 五角星场景

    Returns:
        SweepRow
    """
    lam2 = cfg.coupling ** 2
    ground = ground_projector(3)
    try:
        if cfg.setup == SetupKind.SINGLE_QUTRIT:
            d = _detector(cfg, point, 3, cfg.coupling)
            rho = assemble_single_qutrit(UdwSystem((d,))).rho
            neg = None
            pair = (d, d, True)
        else:
            qubit = _detector(cfg, point, 2, cfg.coupling * cfg.qubit_coupling_ratio)
            qutrit = _detector(cfg, point, 3, cfg.coupling, centre=(point.separation, 0.0, 0.0))
            joint = assemble_qubit_qutrit(UdwSystem((qubit, qutrit)))
            rho = reduce_qutrit(joint).rho
            neg = negativity_second_order(joint.props) / lam2
            pair = (qubit, qutrit, False)

        harvested = delta_cf(rho, ground, scen)
        verdict = harvest_verdict(pair[0], pair[1], harvested, cfg.threshold, same_system=pair[2])
        return SweepRow(
            omega=point.omega,
            T=point.temporal_width,
            alpha_invsqrt=point.alpha_invsqrt,
            L=point.separation,
            delta_cf_over_lambda2=harvested / lam2,
            mana_over_lambda2=mana(rho) / lam2,
            negativity_over_lambda2=neg,
            abs_sym_prop=verdict.abs_symmetric,
            abs_hadamard=verdict.abs_hadamard,
            ratio=verdict.ratio,
            genuine=verdict.genuine,
            s_c_delta=s_c(rho, scen) - s_c(ground, scen),
        )
    except (HarvestError, ArithmeticError, ValueError) as e:
        logger.error(f"❌ 网格点 Ω={point.omega:.4g}, T={point.temporal_width:.4g} 计算失败: {e}")
        return SweepRow.failed(point, f"{type(e).__name__}: {e}")


def run_sweep(cfg: SweepConfig, write: bool = True, progress: bool = True) -> List[SweepRow]:
    """
    执行扫描；各点并行计算，结果恢复为 Ω 优先顺序

    Args:
        cfg: 扫描配置
        write: 是否写出 CSV 到 cfg.output_path
        progress: 是否显示进度条

    Returns:
        结果行列表
    """
    cfg.validate()
    scen = build_pentagram(cfg.angle_set)
    points = list(cfg.points())
    logger.info(f"🚀 开始扫描 {cfg.name}: {cfg.setup.value}, 角度组 {cfg.angle_set}, {len(points)} 个网格点")
    start = time.time()

    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        results = executor.map(lambda p: evaluate_point(cfg, p, scen), points)
        rows = list(tqdm(results, total=len(points), desc=cfg.name, disable=not progress))

    failures = sum(1 for row in rows if row.error)
    logger.info(f"📊 扫描完成: {len(rows)} 行, 失败 {failures} 行, 耗时 {time.time() - start:.1f}s")
    if write:
        emit_csv(rows, cfg.output_path)
    return rows


def rows_to_frame(rows: List[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(row) for row in rows], columns=COLUMNS)


def emit_csv(rows: List[SweepRow], path: Union[str, Path]):
    """
    UTF-8、LF 行尾、17 位有效数字的 CSV，先写临时文件再原子替换

    Raises:
        SweepOutputError: 写入失败
    """
    path = Path(path)
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        rows_to_frame(rows).to_csv(tmp_path, index=False, float_format='%.17g',
                                   lineterminator='\n', encoding='utf-8')
        os.replace(tmp_path, path)
    except OSError as e:
        raise SweepOutputError(f"写入 CSV 失败 {path}: {e}") from e
    logger.info(f"✅ 已写入 {path} ({len(rows)} 行)")


def genuine_consistent(row: SweepRow, threshold: float) -> bool:
    """genuine 列能否由本行的 ratio 与 ΔCF 复算"""
    if row.error:
        return not row.genuine
    expected = row.ratio <= threshold and row.delta_cf_over_lambda2 > 0.0
    return expected == row.genuine


def peak_abs(rows: List[SweepRow], column: str) -> float:
    values = np.array([getattr(r, column) for r in rows if not r.error and getattr(r, column) is not None],
                      dtype=float)
    return float(np.max(np.abs(values))) if values.size else math.nan
