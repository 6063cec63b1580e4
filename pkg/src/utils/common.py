#!/usr/bin/env python3
"""
通用工具函数库
日志、命令行、数值文本解析等公共函数
"""
import logging
import argparse
from fractions import Fraction
from pathlib import Path
from typing import Optional, Dict, Any, List, Tuple


def setup_logging(log_level: str = "INFO",
                  log_file: Optional[str] = None,
                  format_string: Optional[str] = None) -> logging.Logger:
    """
    统一的日志配置

    Args:
        log_level: 日志级别
        log_file: 日志文件路径（可选）
        format_string: 自定义格式字符串（可选）

    Returns:
        配置好的logger
    """
    if format_string is None:
        format_string = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    handlers = [logging.StreamHandler()]

    if log_file:
        log_dir = Path(log_file).parent
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode='a'))

    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format=format_string,
        handlers=handlers
    )

    return logging.getLogger(__name__)


def create_base_parser(description: str) -> argparse.ArgumentParser:
    """
    创建基础的参数解析器，包含常用参数

    Args:
        description: 程序描述

    Returns:
        配置好的ArgumentParser
    """
    parser = argparse.ArgumentParser(description=description)

    parser.add_argument("--log-level", type=str, default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="日志级别")
    parser.add_argument("--log-file", type=str, default=None,
                        help="日志文件路径（可选）")

    return parser


def print_banner(title: str, subtitle: str = "", width: int = 60):
    """
    打印程序横幅

    Args:
        title: 主标题
        subtitle: 副标题（可选）
        width: 横幅宽度
    """
    print("=" * width)
    print(f"{title:^{width}}")
    if subtitle:
        print(f"{subtitle:^{width}}")
    print("=" * width)


def print_status_info(info_dict: Dict[str, Any], title: str = "状态信息"):
    """
    打印状态信息

    Args:
        info_dict: 状态信息字典
        title: 标题
    """
    print(f"\n📊 {title}")
    print("-" * 40)
    for key, value in info_dict.items():
        print(f"{key:20}: {value}")
    print()


def parse_real(text: Any) -> float:
    """
    解析实数，支持 "a/b" 有理数写法

    Args:
        text: 数字或字符串，例如 0.25、"1/30"

    Returns:
        浮点数
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    try:
        return float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"无法解析数值: {text!r}") from e


def parse_float_list(text: Any) -> List[float]:
    """解析逗号分隔的数值列表，如 "1/30,1/10,1/3,1" """
    if isinstance(text, (list, tuple)):
        return [parse_real(item) for item in text]
    items = [item for item in str(text).split(',') if item.strip()]
    if not items:
        raise ValueError(f"空的数值列表: {text!r}")
    return [parse_real(item) for item in items]


def parse_grid_spec(text: str) -> Tuple[float, float, int]:
    """
    解析 MIN:MAX:COUNT 网格描述

    Args:
        text: 例如 "0:4:81"

    Returns:
        (最小值, 最大值, 点数)
    """
    parts = str(text).split(':')
    if len(parts) != 3:
        raise ValueError(f"网格格式应为 MIN:MAX:COUNT，收到: {text!r}")
    try:
        count = int(parts[2])
    except ValueError as e:
        raise ValueError(f"网格点数必须为整数: {parts[2]!r}") from e
    return parse_real(parts[0]), parse_real(parts[1]), count


def parse_key_value_params(text: str) -> Dict[str, str]:
    """解析 "k1=v1,k2=v2" 形式的参数串"""
    params: Dict[str, str] = {}
    if not text:
        return params
    for item in str(text).split(','):
        if not item.strip():
            continue
        if '=' not in item:
            raise ValueError(f"参数项缺少 '=': {item!r}")
        key, value = item.split('=', 1)
        params[key.strip()] = value.strip()
    return params
