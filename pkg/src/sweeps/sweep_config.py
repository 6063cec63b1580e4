#!/usr/bin/env python3
"""
参数扫描配置
预设、YAML/JSON 配置文件与命令行覆盖
"""
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
import yaml

from ..common.errors import ConfigurationError, UnknownPresetError
from ..scenarios.pentagram import PENTAGRAM_ANGLE_SETS
from ..utils.common import parse_float_list, parse_grid_spec, parse_real
from ..utils.config import harvest_config, system_config

logger = logging.getLogger(__name__)


class SetupKind(Enum):
    """探测器配置"""
    SINGLE_QUTRIT = "single_qutrit"
    QUBIT_QUTRIT = "qubit_qutrit"


@dataclass(frozen=True)
class OmegaGrid:
    """能隙网格 [min, max] 上 count 个等距点"""
    min: float = 0.0
    max: float = 4.0
    count: int = 81

    def __post_init__(self):
        if self.count < 2:
            raise ConfigurationError(f"Ω 网格点数至少为 2: {self.count}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or self.max < self.min:
            raise ConfigurationError(f"Ω 网格范围非法: [{self.min}, {self.max}]")
        if self.min < 0:
            raise ConfigurationError(f"Ω 必须 ≥ 0: {self.min}")

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)

    @classmethod
    def parse(cls, spec: Union[str, Dict[str, Any], "OmegaGrid"]) -> "OmegaGrid":
        if isinstance(spec, OmegaGrid):
            return spec
        if isinstance(spec, dict):
            return cls(parse_real(spec.get('min', 0.0)), parse_real(spec.get('max', 4.0)), int(spec.get('count', 81)))
        return cls(*parse_grid_spec(spec))


@dataclass(frozen=True)
class SweepPoint:
    """单个网格点"""
    omega: float
    temporal_width: float
    alpha_invsqrt: float
    separation: Optional[float] = None

    @property
    def alpha(self) -> float:
        """α = (α^{−1/2})^{−2}"""
        return 1.0 / self.alpha_invsqrt ** 2


@dataclass
class SweepConfig:
    """扫描配置"""
    setup: SetupKind = SetupKind.SINGLE_QUTRIT
    angle_set: int = 1
    omega_grid: OmegaGrid = field(default_factory=OmegaGrid)
    temporal_widths: List[float] = field(default_factory=lambda: [1 / 30, 1 / 10, 1 / 3, 1.0])
    alpha_invsqrt: List[float] = field(default_factory=lambda: [1.0, 0.1])
    separations: List[float] = field(default_factory=list)
    coupling: float = harvest_config.default_coupling
    # qubit 耦合与 qutrit 耦合之比，√2 对应负性的简化形式
    qubit_coupling_ratio: float = 1.0
    tbar: float = 0.0
    threshold: float = harvest_config.harvest_threshold
    output_path: str = str(Path(system_config.output_dir) / "sweep.csv")
    workers: int = system_config.sweep_workers
    name: str = "custom"

    def validate(self) -> "SweepConfig":
        """
        检查配置

        Raises:
            ConfigurationError: 任一字段非法
        """
        if self.angle_set not in PENTAGRAM_ANGLE_SETS:
            raise ConfigurationError(f"角度组必须为 {sorted(PENTAGRAM_ANGLE_SETS)}: {self.angle_set}")
        if not self.temporal_widths or any(not (t > 0 and math.isfinite(t)) for t in self.temporal_widths):
            raise ConfigurationError(f"时间宽度必须全部为正: {self.temporal_widths}")
        if not self.alpha_invsqrt or any(not (a > 0 and math.isfinite(a)) for a in self.alpha_invsqrt):
            raise ConfigurationError(f"α^(-1/2) 必须全部为正: {self.alpha_invsqrt}")
        if self.setup == SetupKind.QUBIT_QUTRIT:
            if not self.separations or any(not (L >= 0 and math.isfinite(L)) for L in self.separations):
                raise ConfigurationError(f"qubit-qutrit 扫描需要非负间距列表: {self.separations}")
        if not (self.coupling > 0 and math.isfinite(self.coupling)):
            raise ConfigurationError(f"耦合常数 λ 必须为正: {self.coupling}")
        if not (self.qubit_coupling_ratio > 0 and math.isfinite(self.qubit_coupling_ratio)):
            raise ConfigurationError(f"耦合比必须为正: {self.qubit_coupling_ratio}")
        if not math.isfinite(self.tbar):
            raise ConfigurationError(f"t̄ 必须有限: {self.tbar}")
        if not (self.threshold > 0 and math.isfinite(self.threshold)):
            raise ConfigurationError(f"阈值必须为正: {self.threshold}")
        if self.workers < 1:
            raise ConfigurationError(f"工作线程数至少为 1: {self.workers}")
        return self

    def points(self) -> Iterator[SweepPoint]:
        """Ω 为最外层的确定性遍历顺序"""
        separations: List[Optional[float]] = (
            list(self.separations) if self.setup == SetupKind.QUBIT_QUTRIT else [None])
        for omega in self.omega_grid.values():
            for width in self.temporal_widths:
                for a in self.alpha_invsqrt:
                    for L in separations:
                        yield SweepPoint(float(omega), width, a, L)

    @property
    def n_points(self) -> int:
        n_sep = len(self.separations) if self.setup == SetupKind.QUBIT_QUTRIT else 1
        return self.omega_grid.count * len(self.temporal_widths) * len(self.alpha_invsqrt) * n_sep


def _figure1() -> SweepConfig:
    return SweepConfig(name="figure1")


def _figure2() -> SweepConfig:
    return SweepConfig(setup=SetupKind.QUBIT_QUTRIT, separations=[0.5, 3.0], name="figure2")


def _figure2_sqrt2() -> SweepConfig:
    return SweepConfig(setup=SetupKind.QUBIT_QUTRIT, separations=[0.5, 3.0],
                       qubit_coupling_ratio=math.sqrt(2.0), name="figure2_sqrt2")


_PRESETS = {
    "figure1": _figure1,
    "figure2": _figure2,
    "figure2_sqrt2": _figure2_sqrt2,
}


def preset(name: str) -> SweepConfig:
    """
    预设扫描（T 列表为约定值）

    Raises:
        UnknownPresetError: 未知预设
    """
    try:
        return _PRESETS[name]()
    except KeyError:
        raise UnknownPresetError(f"未知预设: {name}，可选 {sorted(_PRESETS)}") from None


# 配置键与字段的对应关系及解析函数
_FIELD_PARSERS: Dict[str, Tuple[str, Any]] = {
    'setup': ('setup', lambda v: SetupKind(str(v))),
    'angle_set': ('angle_set', int),
    'omega': ('omega_grid', OmegaGrid.parse),
    'omega_grid': ('omega_grid', OmegaGrid.parse),
    'T': ('temporal_widths', parse_float_list),
    'temporal_widths': ('temporal_widths', parse_float_list),
    'alpha_invsqrt': ('alpha_invsqrt', parse_float_list),
    'L': ('separations', parse_float_list),
    'separations': ('separations', parse_float_list),
    'lambda': ('coupling', parse_real),
    'coupling': ('coupling', parse_real),
    'qubit_coupling_ratio': ('qubit_coupling_ratio', parse_real),
    'tbar': ('tbar', parse_real),
    'threshold': ('threshold', parse_real),
    'out': ('output_path', str),
    'output': ('output_path', str),
    'output_path': ('output_path', str),
    'workers': ('workers', int),
    'name': ('name', str),
}


def apply_overrides(cfg: SweepConfig, overrides: Dict[str, Any]) -> SweepConfig:
    """
    用配置文件或命令行的值覆盖配置，None 值忽略

    Raises:
        ConfigurationError: 未知键或无法解析的值
    """
    changes: Dict[str, Any] = {}
    for key, value in overrides.items():
        if value is None or key == 'preset':
            continue
        if key not in _FIELD_PARSERS:
            raise ConfigurationError(f"未知配置项: {key}")
        field_name, parser = _FIELD_PARSERS[key]
        try:
            changes[field_name] = parser(value)
        except (ValueError, TypeError) as e:
            raise ConfigurationError(f"配置项 {key}={value!r} 无法解析: {e}") from e
    return replace(cfg, **changes).validate()


def load_sweep_config(path: Union[str, Path]) -> SweepConfig:
    """
    读取 YAML/JSON 扫描配置；可用 preset 键指定基础预设

    Raises:
        ConfigurationError: 文件不存在或格式错误
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"配置文件不存在: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"配置文件解析失败 {path}: {e}") from e
    if not isinstance(document, dict):
        raise ConfigurationError(f"配置文件顶层必须是对象: {path}")

    section = document.get('sweep', document)
    base = preset(section['preset']) if section.get('preset') else SweepConfig()
    cfg = apply_overrides(base, section)
    logger.info(f"✅ 扫描配置加载成功: {path} ({cfg.n_points} 个网格点)")
    return cfg
