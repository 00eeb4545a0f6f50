#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
文件处理工具
负责代数定义文件的读取以及报告文件的保存与读取
"""

import json
import os
import re
from fractions import Fraction
from typing import Dict, List, Tuple

from core.errors import AlgebraError, AlgebraFileError
from core.fock import BosonAlgebra, make_algebra, to_scalar
from utils.report import validate_report

# gram = [[p/q, ...], ...]：整体只能是逗号分隔的行
MATRIX_PATTERN = re.compile(r'\[\[[^\[\]]*\](?:,\[[^\[\]]*\])*\]')
ROW_PATTERN = re.compile(r'\[([^\[\]]*)\]')
ENTRY_PATTERN = re.compile(r'-?[0-9]+(?:/[0-9]+)?')
RANK_PATTERN = re.compile(r'[0-9]+')


class FileHandler:
    """代数文件与报告文件处理器"""

    def __init__(self):
        self.encoding = 'utf-8'

    def parse_algebra_text(self, text: str, source: str = '<text>') -> BosonAlgebra:
        """
        解析代数定义

        Args:
            text: 含 `rank = r` 与 `gram = [[p/q, ...], ...]` 的文本，# 开头为注释
            source: 出错时显示的来源名

        Returns:
            BosonAlgebra: 已校验的代数；缺少 gram 时取单位矩阵

        Raises:
            AlgebraFileError: 格式错误
        """
        values: Dict[str, Tuple[int, str]] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise AlgebraFileError(f"{source}:{number}: 应为 'key = value' 形式")
            key, value = (part.strip() for part in line.split('=', 1))
            if key not in ('rank', 'gram'):
                raise AlgebraFileError(f"{source}:{number}: 未知字段 {key!r}")
            if key in values:
                raise AlgebraFileError(f"{source}:{number}: 重复字段 {key!r}")
            values[key] = (number, value)

        if 'rank' not in values:
            raise AlgebraFileError(f"{source}: 缺少字段 'rank'")
        number, rank_text = values['rank']
        if not RANK_PATTERN.fullmatch(rank_text):
            raise AlgebraFileError(f"{source}:{number}: rank 必须是非负整数")
        rank = int(rank_text)

        if 'gram' in values:
            number, gram_text = values['gram']
            gram = self._parse_matrix(gram_text, f"{source}:{number}")
        else:
            gram = [[int(i == j) for j in range(rank)] for i in range(rank)]

        try:
            return make_algebra(rank, gram)
        except AlgebraError as exc:
            raise AlgebraFileError(f"{source}: {exc}") from exc

    def _parse_matrix(self, text: str, where: str) -> List[List[Fraction]]:
        compact = re.sub(r'\s+', '', text)
        if not MATRIX_PATTERN.fullmatch(compact):
            raise AlgebraFileError(f"{where}: gram 格式应为 [[a, b], [c, d]]")
        rows = []
        for row_text in ROW_PATTERN.findall(compact[1:-1]):
            entries = row_text.split(',')
            for entry in entries:
                if not ENTRY_PATTERN.fullmatch(entry):
                    raise AlgebraFileError(f"{where}: gram 元素应为 p/q 形式的有理数: {entry!r}")
            try:
                rows.append([to_scalar(x) for x in entries])
            except ValueError as exc:
                raise AlgebraFileError(f"{where}: {exc}") from exc
        return rows

    def load_algebra(self, file_path: str) -> BosonAlgebra:
        """从文件读取代数"""
        ok, message = self.validate_file_path(file_path)
        if not ok:
            raise AlgebraFileError(message)
        with open(file_path, 'r', encoding=self.encoding) as f:
            return self.parse_algebra_text(f.read(), source=file_path)

    def save_report(self, report: Dict, output_path: str) -> str:
        """
        保存报告

        Args:
            report: 报告字典
            output_path: 输出文件路径

        Returns:
            str: 实际写入的路径
        """
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, 'w', encoding=self.encoding) as f:
            json.dump(report, f, indent=2, ensure_ascii=False)
        return output_path

    def load_report(self, report_path: str) -> Dict:
        """读取并校验报告"""
        with open(report_path, 'r', encoding=self.encoding) as f:
            report = json.load(f)
        check = validate_report(report)
        if not check['success']:
            raise AlgebraFileError(f"{report_path}: " + "; ".join(check['errors']))
        return report

    def validate_file_path(self, file_path: str) -> Tuple[bool, str]:
        """
        验证文件路径

        Args:
            file_path: 文件路径

        Returns:
            Tuple[bool, str]: (是否有效, 错误消息)
        """
        if not file_path:
            return False, "文件路径不能为空"
        if not os.path.exists(file_path):
            return False, f"文件不存在: {file_path}"
        if not os.path.isfile(file_path):
            return False, f"路径是目录，不是文件: {file_path}"
        if not os.access(file_path, os.R_OK):
            return False, f"文件不可读: {file_path}"
        return True, ""
