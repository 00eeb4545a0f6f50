#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确消元
有理矩阵上的无分数（Bareiss）高斯消元：行阶梯形、核、求解与求逆
"""

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from core.errors import DegenerateFormError, DimensionMismatchError

Matrix = List[List[Fraction]]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """逐行乘以分母的最小公倍数，得到整数矩阵（行空间不变）"""
    result = []
    for row in rows:
        scale = 1
        for entry in row:
            scale = lcm(scale, Fraction(entry).denominator)
        result.append([int(Fraction(entry) * scale) for entry in row])
    return result


def echelon_form(rows: Sequence[Sequence[Fraction]],
                 ncols: int) -> Tuple[List[List[int]], List[int]]:
    """
    无分数行阶梯化

    Args:
        rows: 有理矩阵（行列表）
        ncols: 列数（行列表为空时仍需知道）

    Returns:
        Tuple: (整数阶梯矩阵, 主元列列表)
    """
    m = _integer_rows(rows)
    nrows = len(m)
    pivots: List[int] = []
    previous = 1
    r = 0

    for c in range(ncols):
        if r >= nrows:
            break

        # 主元取规范顺序中第一个非零元
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]

        p = m[r][c]
        for i in range(r + 1, nrows):
            factor = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                # Sylvester 恒等式保证整除
                row_i[j] = (p * row_i[j] - factor * row_r[j]) // previous
            row_i[c] = 0
        previous = p
        pivots.append(c)
        r += 1

    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    """矩阵的秩"""
    return len(echelon_form(rows, ncols)[1])


def _back_substitute(echelon: List[List[int]], pivots: List[int],
                     values: List[Fraction]) -> List[Fraction]:
    """自下而上解出主元变量；values 中自由变量已赋值"""
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = echelon[r]
        total = Fraction(0)
        for j in range(c + 1, len(values)):
            if row[j] and values[j]:
                total += row[j] * values[j]
        values[c] = -total / row[c]
    return values


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """
    零空间基

    Args:
        rows: 有理矩阵
        ncols: 列数

    Returns:
        List: 线性无关且张成核的坐标向量，按自由列顺序排列
    """
    echelon, pivots = echelon_form(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        values = [Fraction(0)] * ncols
        values[free] = Fraction(1)
        basis.append(_back_substitute(echelon, pivots, values))
    return basis


def solve(rows: Sequence[Sequence[Fraction]], ncols: int,
          target: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    求解 M x = target

    Args:
        rows: 有理矩阵
        ncols: 未知数个数
        target: 右端向量

    Returns:
        Optional[List]: 一个解（自由变量取 0）；无解时返回 None
    """
    if len(target) != len(rows):
        raise DimensionMismatchError(
            f"target has length {len(target)} but matrix has {len(rows)} rows"
        )
    augmented = [list(row) + [Fraction(t)] for row, t in zip(rows, target)]
    echelon, pivots = echelon_form(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None

    values = [Fraction(0)] * (ncols + 1)
    values[ncols] = Fraction(-1)
    solution = _back_substitute(echelon, pivots, values)
    return solution[:ncols]


def matrix_vector(rows: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> List[Fraction]:
    """矩阵乘向量"""
    return [sum((a * x for a, x in zip(row, vector) if a and x), Fraction(0)) for row in rows]


def matrix_product(left: Sequence[Sequence[Fraction]], right: Sequence[Sequence[Fraction]],
                   inner: int, ncols: int) -> Matrix:
    """矩阵乘积"""
    if left and len(left[0]) != inner:
        raise DimensionMismatchError("inner dimensions differ")
    if len(right) != inner:
        raise DimensionMismatchError("inner dimensions differ")
    result = []
    for row in left:
        out = [Fraction(0)] * ncols
        for k, a in enumerate(row):
            if not a:
                continue
            for j, b in enumerate(right[k]):
                if b:
                    out[j] += a * b
        result.append(out)
    return result


def invert(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    """
    方阵求逆

    Args:
        rows: n×n 有理矩阵

    Returns:
        Matrix: 逆矩阵

    Raises:
        DegenerateFormError: 矩阵奇异
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise DimensionMismatchError("matrix is not square")
    # 对 [A | I] 做一次消元，再对每个单位列回代
    augmented = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    echelon, pivots = echelon_form(augmented, 2 * n)
    if len(pivots) < n or (pivots and pivots[-1] >= n):
        raise DegenerateFormError()
    columns = []
    for i in range(n):
        values = [Fraction(0)] * (2 * n)
        values[n + i] = Fraction(-1)
        columns.append(_back_substitute(echelon, pivots, values)[:n])
    return [[columns[j][i] for j in range(n)] for i in range(n)]
