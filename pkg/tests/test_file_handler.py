# -*- coding: utf-8 -*-
"""
文件处理测试
"""

from fractions import Fraction

import pytest

from core.errors import AlgebraFileError
from core.fock import identity_algebra
from utils.file_handler import FileHandler
from utils.report import build_report


@pytest.fixture
def handler():
    return FileHandler()


class TestAlgebraFiles:
    def test_identity_when_gram_missing(self, handler):
        algebra = handler.parse_algebra_text("# 秩二\nrank = 2\n")
        assert algebra.rank == 2
        assert algebra.gram == ((1, 0), (0, 1))

    def test_rational_gram(self, handler):
        algebra = handler.parse_algebra_text("rank = 2\ngram = [[2, 1/2], [1/2, 1]]  # 对称\n")
        assert algebra.gram[0][1] == Fraction(1, 2)

    @pytest.mark.parametrize('text, message', [
        ("gram = [[1]]", "缺少字段 'rank'"),
        ("rank = x", "rank 必须是非负整数"),
        ("rank = \u0663", "rank 必须是非负整数"),
        ("rank = 1\nrank = 1", "重复字段 'rank'"),
        ("rank = 1\nsize = 3", "未知字段 'size'"),
        ("rank 1", "应为 'key = value' 形式"),
        ("rank = 2\ngram = [1, 0]", "gram 格式应为"),
        ("rank = 2\ngram = [[1, 0]junk[0, 1]]", "gram 格式应为"),
        ("rank = 2\ngram = [[1, 0], [0, 1]], [[1]]", "gram 格式应为"),
        ("rank = 2\ngram = [[1,, 0], [0, 1]]", "p/q 形式"),
        ("rank = 1\ngram = [[0.5]]", "p/q 形式"),
        ("rank = 1\ngram = [[]]", "p/q 形式"),
        ("rank = 1\ngram = [[1/0]]", "malformed rational"),
        ("rank = 2\ngram = [[1, 2], [0, 1]]", "not symmetric"),
        ("rank = 1\ngram = [[0]]", "degenerate form"),
    ])
    def test_errors(self, handler, text, message):
        with pytest.raises(AlgebraFileError, match=message):
            handler.parse_algebra_text(text, source='algebra.txt')

    def test_gram_whitespace_and_signs(self, handler):
        algebra = handler.parse_algebra_text("rank = 2\ngram = [ [ -2 , 1/3 ] ,\t[1/3, 4] ]\n")
        assert algebra.gram == ((-2, Fraction(1, 3)), (Fraction(1, 3), 4))

    def test_line_numbers(self, handler):
        with pytest.raises(AlgebraFileError, match="algebra.txt:3"):
            handler.parse_algebra_text("rank = 1\n\nbogus\n", source='algebra.txt')

    def test_load_from_disk(self, handler, tmp_path):
        path = tmp_path / 'lattice.txt'
        path.write_text("rank = 1\ngram = [[4]]\n", encoding='utf-8')
        assert handler.load_algebra(str(path)).gram == ((4,),)

    def test_missing_file(self, handler, tmp_path):
        with pytest.raises(AlgebraFileError, match="文件不存在"):
            handler.load_algebra(str(tmp_path / 'absent.txt'))
        assert handler.validate_file_path('') == (False, "文件路径不能为空")
        assert handler.validate_file_path(str(tmp_path)) == (False, f"路径是目录，不是文件: {tmp_path}")


class TestReports:
    def test_save_and_load(self, handler, tmp_path):
        report = build_report('dims', identity_algebra(1), {}, {'dims': [1]})
        path = handler.save_report(report, str(tmp_path / 'out' / 'report.json'))
        assert handler.load_report(path) == report

    def test_invalid_report(self, handler, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{"command": "dims"}', encoding='utf-8')
        with pytest.raises(AlgebraFileError, match="缺少字段"):
            handler.load_report(str(path))
