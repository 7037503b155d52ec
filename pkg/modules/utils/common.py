"""
Utility Functions
通用工具函数：配置加载、日志初始化、时间格式化、命令行子集参数
"""

import copy
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from dotenv import load_dotenv

from ..data_types import KSubset
from ..errors import InputError

PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

CONFIG_ENV = "POSITROID_CONFIG"
LOG_LEVEL_ENV = "POSITROID_LOG_LEVEL"

DEFAULT_CONFIG: Dict[str, Any] = {
    "app": {"name": "positroid-kit", "version": "1.0.0"},
    "limits": {
        "max_ground_size": 64,
        "realize_max_entry_bits": 5_000_000,
        "realize_max_minors": 1000,
    },
    "flag": {"exhaustive_cap": 7, "sample_orders": 2000},
    "verify": {
        "exhaustive_n": 5,
        "extended_n": 6,
        "random_count": 1000,
        "random_n": 8,
        "le_samples": 100,
        "lattice_samples": 200,
        "swap_samples": 200,
        "sweep_n": 16,
        "sweep_seconds": 5.0,
        "seed": 0,
    },
    "logging": {
        "level": "WARNING",
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        "file": None,
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    加载 config.yaml，缺失的键用默认值补齐

    Args:
        path: 配置文件路径；默认依次取 POSITROID_CONFIG 与 config/config.yaml

    Returns:
        Dict: 配置
    """
    load_dotenv()
    path = Path(path or os.environ.get(CONFIG_ENV) or DEFAULT_CONFIG_PATH)
    if not path.exists():
        logging.getLogger(__name__).warning("配置文件不存在 %s，使用默认配置", path)
        return copy.deepcopy(DEFAULT_CONFIG)
    with open(path, "r", encoding="utf-8") as f:
        loaded = yaml.safe_load(f) or {}
    if not isinstance(loaded, dict):
        raise InputError(f"config file {path} must contain a mapping")
    return _merge(DEFAULT_CONFIG, loaded)


def setup_logging(config: Dict[str, Any]) -> None:
    """
    按 logging 段初始化根日志器；日志只写 stderr 与可选文件

    Args:
        config: 完整配置
    """
    section = config.get("logging", {})
    level = os.environ.get(LOG_LEVEL_ENV) or section.get("level", "WARNING")
    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = section.get("file")
    if log_file:
        log_path = Path(log_file)
        if not log_path.is_absolute():
            log_path = PROJECT_ROOT / log_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format=section.get("format", DEFAULT_CONFIG["logging"]["format"]),
        handlers=handlers,
        force=True,
    )


def format_time(seconds: float) -> str:
    """
    格式化时间

    Args:
        seconds: 秒数

    Returns:
        str: 例如 0.25s、1m 3.0s
    """
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes = seconds // 60
    return f"{minutes:.0f}m {seconds % 60:.1f}s"


def parse_subset_arg(text: str, n: int) -> KSubset:
    """把 "2,3,4" 解析为 [n] 的子集；空串表示空集"""
    tokens = [token.strip() for token in text.split(",") if token.strip()]
    try:
        elements = [int(token) for token in tokens]
    except ValueError:
        raise InputError(f"subset argument {text!r} must be comma-separated integers")
    return KSubset.of(n, elements)
