#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
控制台输出
负责彩色状态行与日志处理器的安装
"""

import logging
import sys

import click
from colorama import Fore, Style, just_fix_windows_console

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}

_color_enabled = True


class ColorFormatter(logging.Formatter):
    """按级别给级别名着色"""

    def __init__(self, color: bool = True):
        super().__init__('%(levelname)s %(name)s: %(message)s')
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        if not self.color:
            return message
        prefix = LEVEL_COLORS.get(record.levelno, '')
        return message.replace(record.levelname, f"{prefix}{record.levelname}{Style.RESET_ALL}", 1)


def setup_console(log_level: str = 'WARNING', color: bool = True) -> None:
    """
    初始化控制台

    Args:
        log_level: 日志级别名
        color: 是否着色
    """
    global _color_enabled
    _color_enabled = color
    just_fix_windows_console()

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_voa_console', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter(color))
    handler._voa_console = True
    root.addHandler(handler)
    root.setLevel(log_level.upper())


def _status(symbol: str, color: str, message: str, err: bool) -> None:
    text = f"{symbol} {message}"
    if _color_enabled:
        text = f"{color}{text}{Style.RESET_ALL}"
    click.echo(text, err=err)


def success(message: str) -> None:
    _status('✅', Fore.GREEN, message, err=False)


def failure(message: str) -> None:
    _status('❌', Fore.RED, message, err=True)


def warning(message: str) -> None:
    _status('⚠️ ', Fore.YELLOW, message, err=True)


def plain(message: str) -> None:
    click.echo(message)
