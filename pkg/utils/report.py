#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
报告生成
负责版本化报告结构、有理数的精确字符串表示、SHA-256 摘要与文本渲染
"""

import dataclasses
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from cryptography.hazmat.backends import default_backend
from cryptography.hazmat.primitives import hashes

from core.fock import BosonAlgebra, ModuleState, State
from utils.state_parser import format_state

REPORT_VERSION = "1"
REPORT_FIELDS = ('command', 'algebra', 'inputs', 'result', 'certificate', 'seed', 'version')


def to_jsonable(value: Any) -> Any:
    """
    转为 JSON 友好的结构

    Args:
        value: 任意引擎输出

    Returns:
        Any: 有理数为 "p/q" 字符串，态为规范文本，数据类展开为字典
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, ModuleState):
        return {'state': format_state(value), 'momentum': [str(x) for x in value.momentum]}
    if isinstance(value, State):
        return format_state(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def canonical_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def compute_digest(value: Any) -> str:
    """
    结果的完整性摘要

    Args:
        value: 任意可序列化结果

    Returns:
        str: 规范 JSON 的 SHA-256 十六进制摘要
    """
    digest = hashes.Hash(hashes.SHA256(), backend=default_backend())
    digest.update(canonical_json(value).encode('utf-8'))
    return digest.finalize().hex()


def algebra_summary(algebra: BosonAlgebra) -> Dict:
    return {'rank': algebra.rank, 'gram': [[str(x) for x in row] for row in algebra.gram]}


def build_report(command: str, algebra: BosonAlgebra, inputs: Dict, result: Any,
                 certificate: Any = None, seed: Optional[int] = None) -> Dict:
    """
    构建报告

    Args:
        command: 子命令名
        algebra: 使用的代数
        inputs: 输入参数
        result: 主结果
        certificate: 证书或见证
        seed: 随机种子

    Returns:
        Dict: 字段固定的报告
    """
    return {
        'command': command,
        'algebra': algebra_summary(algebra),
        'inputs': to_jsonable(inputs),
        'result': to_jsonable(result),
        'certificate': to_jsonable(certificate),
        'seed': seed,
        'version': REPORT_VERSION,
    }


def validate_report(report: Any) -> Dict:
    """
    校验报告结构

    Args:
        report: 解析后的报告

    Returns:
        Dict: success 与 errors 列表
    """
    errors: List[str] = []
    if not isinstance(report, dict):
        return {'success': False, 'errors': ['报告必须是 JSON 对象']}

    missing = [f for f in REPORT_FIELDS if f not in report]
    extra = [f for f in report if f not in REPORT_FIELDS]
    errors += [f"缺少字段 {f!r}" for f in missing]
    errors += [f"多余字段 {f!r}" for f in extra]

    if 'command' in report and not isinstance(report['command'], str):
        errors.append("command 必须是字符串")
    if report.get('version', REPORT_VERSION) != REPORT_VERSION:
        errors.append(f"不支持的版本 {report.get('version')!r}")
    if 'seed' in report and report['seed'] is not None and not isinstance(report['seed'], int):
        errors.append("seed 必须是整数或 null")

    algebra = report.get('algebra')
    if 'algebra' in report:
        if not isinstance(algebra, dict) or set(algebra) != {'rank', 'gram'}:
            errors.append("algebra 必须包含 rank 与 gram")
        elif not all(isinstance(x, str) for row in algebra['gram'] for x in row):
            errors.append("gram 元素必须是有理数字符串")

    if 'inputs' in report and not isinstance(report['inputs'], dict):
        errors.append("inputs 必须是对象")

    return {'success': not errors, 'errors': errors}


def _render_lines(value: Any, indent: int) -> List[str]:
    pad = '  ' * indent
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.extend(_render_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(value: Any) -> str:
    if value is None:
        return 'null'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (dict, list)):
        return '{}' if isinstance(value, dict) else '[]'
    return str(value)


def render_text(report: Dict) -> str:
    """报告的文本形式，与 JSON 内容一致"""
    return "\n".join(_render_lines(report, 0))


def render_json(report: Dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)
