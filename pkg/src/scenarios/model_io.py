#!/usr/bin/env python3
"""
经验模型文档读写
格式: {"measurements": n, "contexts": [[i, j], ...], "rows": [[p1, p2, p3, p4], ...]}
概率可以是小数或 "a/b" 形式的有理数字符串
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from ..common.errors import ConfigurationError, SweepOutputError
from ..utils.common import parse_real
from .empirical import EmpiricalModel, Scenario

logger = logging.getLogger(__name__)


def parse_probability(value: Any) -> float:
    """解析 0.25、"2/9"、"1" 等写法"""
    try:
        return parse_real(value)
    except ValueError as e:
        raise ConfigurationError(f"非法概率值: {value!r} ({e})") from e


def model_from_document(document: Dict[str, Any], scenario_id: str = "external") -> EmpiricalModel:
    """由已解析的文档构造经验模型"""
    try:
        n = int(document["measurements"])
        contexts = [tuple(int(x) for x in pair) for pair in document["contexts"]]
        rows = [[parse_probability(p) for p in row] for row in document["rows"]]
    except (KeyError, TypeError) as e:
        raise ConfigurationError(f"模型文档缺少字段或格式错误: {e}") from e
    if any(len(pair) != 2 for pair in contexts):
        raise ConfigurationError("只支持两个测量组成的语境")
    name = document.get("name", scenario_id)
    return EmpiricalModel(name, n, tuple(contexts), rows)


def load_model(path: Union[str, Path]) -> EmpiricalModel:
    """
    读取模型文档（JSON 或 YAML）

    Raises:
        ConfigurationError: 文件不存在或格式错误
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"模型文件不存在: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        try:
            document = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"模型文件解析失败 {path}: {e}") from e
    if not isinstance(document, dict):
        raise ConfigurationError(f"模型文件顶层必须是对象: {path}")
    model = model_from_document(document, path.stem)
    logger.info(f"✅ 已加载经验模型 {model.scenario_id}: {len(model.contexts)} 个语境")
    return model


def model_to_document(model: EmpiricalModel) -> Dict[str, Any]:
    return {
        "name": model.scenario_id,
        "measurements": model.n_measurements,
        "contexts": [list(pair) for pair in model.contexts],
        "rows": [[float(p) for p in row] for row in model.table],
    }


def save_model(model: EmpiricalModel, path: Union[str, Path]):
    """以 JSON 原子写入模型文档"""
    path = Path(path)
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(tmp_path, 'w', encoding='utf-8', newline='\n') as f:
            json.dump(model_to_document(model), f, indent=2)
            f.write('\n')
        os.replace(tmp_path, path)
    except OSError as e:
        raise SweepOutputError(f"写入模型文件失败 {path}: {e}") from e


def scenario_of(model: EmpiricalModel) -> Scenario:
    """外部模型对应的无算符场景"""
    return Scenario(model.n_measurements, model.contexts, (), model.scenario_id)
