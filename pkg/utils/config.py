#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置加载
读取仓库根目录的 config.ini，命令行参数优先于配置值
"""

import configparser
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from core.errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / 'config.ini'
OUTPUT_FORMATS = ('text', 'json')


@dataclass(frozen=True)
class AppConfig:
    """引擎与命令行的默认值"""

    rank: int = 1
    max_weight: int = 6
    max_weight_high_rank: int = 4
    memoize: bool = True
    seed: int = 1
    trials: int = 200
    output_format: str = 'text'
    color: bool = True
    log_level: str = 'WARNING'

    def truncation_for(self, rank: int) -> int:
        """秩 ≥ 3 时维数增长过快，改用较小的截断"""
        return self.max_weight if rank <= 2 else self.max_weight_high_rank


def _positive_int(section: configparser.SectionProxy, key: str, default: int,
                  minimum: int = 1) -> int:
    try:
        value = section.getint(key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"配置项 {key!r} 必须是整数") from exc
    if value < minimum:
        raise ConfigError(f"配置项 {key!r} 不能小于 {minimum}，当前为 {value}")
    return value


def _boolean(section: configparser.SectionProxy, key: str, default: bool) -> bool:
    try:
        return section.getboolean(key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"配置项 {key!r} 必须是 true 或 false") from exc


def load_config(path: Optional[Union[str, Path]] = None) -> AppConfig:
    """
    加载配置

    Args:
        path: 配置文件路径，默认取仓库根目录的 config.ini；文件不存在时使用内置默认值

    Returns:
        AppConfig: 已校验的配置

    Raises:
        ConfigError: 值非法
    """
    parser = configparser.ConfigParser()
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if config_path.exists():
        try:
            parser.read(config_path, encoding='utf-8')
        except configparser.Error as exc:
            raise ConfigError(f"无法读取配置文件 {config_path}: {exc}") from exc
    elif path is not None:
        raise ConfigError(f"配置文件不存在: {config_path}")

    section = parser['DEFAULT']
    defaults = AppConfig()

    output_format = section.get('output_format', defaults.output_format).strip().lower()
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"output_format 必须是以下之一: {', '.join(OUTPUT_FORMATS)}")

    log_level = section.get('log_level', defaults.log_level).strip().upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise ConfigError(f"未知的日志级别 {log_level!r}")

    return AppConfig(
        rank=_positive_int(section, 'rank', defaults.rank),
        max_weight=_positive_int(section, 'max_weight', defaults.max_weight),
        max_weight_high_rank=_positive_int(section, 'max_weight_high_rank',
                                           defaults.max_weight_high_rank),
        memoize=_boolean(section, 'memoize', defaults.memoize),
        seed=_positive_int(section, 'seed', defaults.seed, minimum=0),
        trials=_positive_int(section, 'trials', defaults.trials),
        output_format=output_format,
        color=_boolean(section, 'color', defaults.color),
        log_level=log_level,
    )
