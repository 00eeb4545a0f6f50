#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分次线性代数
算子矩阵、核与求解、ker L(1) ⊕ im L(-1) 拆分、半准素分解
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from core import elimination
from core.errors import DimensionMismatchError, ExcludedWeightError, GradingError, NotHomogeneousError
from core.fock import (
    BosonAlgebra, ModuleState, Monomial, State, basis, coordinates,
    graded_components, monomial_weight, state_from_coordinates,
)
from core.modes import ModeEngine

logger = logging.getLogger(__name__)

Operator = Callable[[State], State]


@dataclass(frozen=True)
class GradedMatrix:
    """分次片之间线性映射在规范基下的矩阵（行 = 目标基，列 = 源基）"""

    source_weight: int
    target_weight: int
    entries: Tuple[Tuple[Fraction, ...], ...]
    source_basis: Tuple[Monomial, ...]
    target_basis: Tuple[Monomial, ...]
    momentum: Optional[Tuple[Fraction, ...]] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.target_basis), len(self.source_basis))

    def rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self.entries]

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def _template(self) -> State:
        return ModuleState(self.momentum) if self.momentum is not None else State()

    def apply(self, state: State) -> State:
        """矩阵乘以态的坐标向量"""
        vector = coordinates(state, self.source_basis)
        extra = [m for m in state.terms if monomial_weight(m) != self.source_weight]
        if extra:
            raise GradingError(f"state has components outside weight {self.source_weight}")
        image = elimination.matrix_vector(self.entries, vector)
        return state_from_coordinates(image, self.target_basis, self._template())

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if other.target_weight != self.source_weight:
            raise DimensionMismatchError(
                f"cannot compose: weight {other.target_weight} feeds weight {self.source_weight}"
            )
        product = elimination.matrix_product(
            self.entries, other.entries, len(self.source_basis), len(other.source_basis)
        )
        return GradedMatrix(
            source_weight=other.source_weight,
            target_weight=self.target_weight,
            entries=tuple(tuple(row) for row in product),
            source_basis=other.source_basis,
            target_basis=self.target_basis,
            momentum=self.momentum,
        )


def basis_state(monomial: Monomial, momentum: Optional[Sequence[Fraction]] = None) -> State:
    """单个基单项式对应的态（给定动量时属于动量模）"""
    if momentum is not None:
        return ModuleState(momentum, {monomial: 1})
    return State({monomial: 1})


def operator_matrix(op: Operator, algebra: BosonAlgebra, source_weight: int,
                    target_weight: int,
                    momentum: Optional[Sequence[Fraction]] = None) -> GradedMatrix:
    """
    构造算子矩阵

    Args:
        op: 作用于基态的线性映射
        algebra: 玻色子代数
        source_weight: 源权重 n
        target_weight: 目标权重 m
        momentum: 给定时在动量模 M(1, λ) 上取矩阵

    Returns:
        GradedMatrix: 规范基下的精确矩阵

    Raises:
        GradingError: 输出越出目标权重
    """
    momentum = algebra.check_vector(momentum) if momentum is not None else None
    source = tuple(basis(algebra, source_weight))
    target = tuple(basis(algebra, target_weight))
    position = {mono: i for i, mono in enumerate(target)}
    rows = [[Fraction(0)] * len(source) for _ in target]

    for col, mono in enumerate(source):
        image = op(basis_state(mono, momentum))
        for out, coeff in image.terms.items():
            if out not in position:
                raise GradingError(
                    f"operator sends weight {source_weight} into weight "
                    f"{monomial_weight(out)}, expected {target_weight}"
                )
            rows[position[out]][col] = coeff

    return GradedMatrix(
        source_weight=source_weight,
        target_weight=target_weight,
        entries=tuple(tuple(row) for row in rows),
        source_basis=source,
        target_basis=target,
        momentum=momentum,
    )


def kernel_basis(matrix: GradedMatrix) -> List[List[Fraction]]:
    """核的一组基（坐标向量）"""
    return elimination.kernel_basis(matrix.rows(), len(matrix.source_basis))


def solve(matrix: GradedMatrix, target: Union[Sequence[Fraction], State]) -> Optional[List[Fraction]]:
    """
    求一个原像

    Args:
        matrix: 算子矩阵
        target: 目标坐标向量或目标权重上的态

    Returns:
        Optional[List]: 一个解；无解返回 None
    """
    if isinstance(target, State):
        target = coordinates(target, matrix.target_basis)
    if len(target) != len(matrix.target_basis):
        raise DimensionMismatchError(
            f"target has length {len(target)}, expected {len(matrix.target_basis)}"
        )
    return elimination.solve(matrix.rows(), len(matrix.source_basis), list(target))


@dataclass(frozen=True)
class LeftInverse:
    """单射矩阵的求解器：满秩行子集及其逆矩阵，一次消元反复使用"""

    matrix: GradedMatrix
    pivot_rows: Tuple[int, ...]
    inverse: Tuple[Tuple[Fraction, ...], ...]

    def preimage(self, target: State) -> Optional[State]:
        """
        求 M x = target 的唯一解

        Args:
            target: 目标权重上的态

        Returns:
            Optional[State]: 源权重上的原像；不在像中返回 None
        """
        if any(monomial_weight(m) != self.matrix.target_weight for m in target.terms):
            return None
        vector = coordinates(target, self.matrix.target_basis)
        x = elimination.matrix_vector(self.inverse, [vector[r] for r in self.pivot_rows])
        if elimination.matrix_vector(self.matrix.entries, x) != vector:
            return None
        return state_from_coordinates(x, self.matrix.source_basis, self.matrix._template())


def left_inverse(matrix: GradedMatrix) -> LeftInverse:
    """
    为列满秩矩阵构造 LeftInverse

    Raises:
        DimensionMismatchError: 矩阵不是单射
    """
    ncols = len(matrix.source_basis)
    if ncols == 0:
        return LeftInverse(matrix=matrix, pivot_rows=(), inverse=())
    transpose = [list(col) for col in zip(*matrix.entries)]
    _, pivots = elimination.echelon_form(transpose, len(matrix.target_basis))
    if len(pivots) < ncols:
        raise DimensionMismatchError(
            f"map from weight {matrix.source_weight} to weight {matrix.target_weight} "
            f"has rank {len(pivots)} < {ncols}"
        )
    square = [matrix.entries[r] for r in pivots]
    inverse = elimination.invert(square)
    return LeftInverse(
        matrix=matrix,
        pivot_rows=tuple(pivots),
        inverse=tuple(tuple(row) for row in inverse),
    )


def joint_kernel(algebra: BosonAlgebra, weight: int, operators: Sequence[Operator]) -> List[State]:
    """
    多个线性映射在 V_weight 上的公共核

    Args:
        algebra: 玻色子代数
        weight: 权重
        operators: 线性映射列表，输出可以跨越多个权重

    Returns:
        List[State]: 公共核的一组基
    """
    source = basis(algebra, weight)
    row_index: Dict[Tuple[int, Monomial], int] = {}
    columns = []
    for mono in source:
        column = {}
        v = State({mono: 1})
        for idx, op in enumerate(operators):
            for out, coeff in op(v).terms.items():
                key = (idx, out)
                column[key] = coeff
                row_index.setdefault(key, len(row_index))
        columns.append(column)

    rows = [[Fraction(0)] * len(source) for _ in row_index]
    for col, column in enumerate(columns):
        for key, coeff in column.items():
            rows[row_index[key]][col] = coeff

    logger.debug("joint kernel on weight %d: %d equations, %d unknowns",
                 weight, len(rows), len(source))
    return [state_from_coordinates(vec, source)
            for vec in elimination.kernel_basis(rows, len(source))]


def quasi_primary_split(engine: ModeEngine, v: State) -> Tuple[State, State]:
    """
    V_n = ker L(1) ⊕ im L(-1) 的分解（n ≠ 1）

    Args:
        engine: 模引擎
        v: 权重 n 的齐次态

    Returns:
        Tuple[State, State]: (q, u)，v = q + L(-1)u，L(1)q = 0，u 的权重为 n-1；唯一

    Raises:
        ExcludedWeightError: n = 1
    """
    if not v:
        return v, State()
    if not v.is_homogeneous():
        raise NotHomogeneousError("splitting requires a homogeneous state")
    n = v.weight
    if n == 1:
        raise ExcludedWeightError("weight 1 is excluded from the L(1)/L(-1) splitting")
    if n == 0:
        return v, State()

    # L(1) L(-1) 在 V_{n-1} 上可逆，u 由 L(1)v 唯一确定
    key = ('split', n - 1)
    solver = engine.matrix_cache.get(key)
    if solver is None:
        composite = operator_matrix(
            lambda w: engine.virasoro(1, engine.virasoro(-1, w)), engine.algebra, n - 1, n - 1
        )
        solver = engine.matrix_cache[key] = left_inverse(composite)
    u = solver.preimage(engine.virasoro(1, v))
    if u is None:
        raise ArithmeticError(f"L(1)L(-1) is not invertible on weight {n - 1}")

    q = v - engine.virasoro(-1, u)
    assert not engine.virasoro(1, q), "quasi-primary part is not annihilated by L(1)"
    return q, u


def semi_primary_decompose(engine: ModeEngine, v: State) -> List[State]:
    """
    v = Σ_n L(-1)^n u^n，每个 u^n 半准素

    Args:
        engine: 模引擎
        v: 任意态

    Returns:
        List[State]: [u^0, ..., u^m]，u^m ≠ 0；零态返回空列表
    """
    parts: Dict[int, State] = {}

    def accumulate(index: int, state: State) -> None:
        parts[index] = parts.get(index, State()) + state

    for weight, component in graded_components(v).items():
        current = component
        steps = 0
        while True:
            if current.is_zero():
                break
            if current.weight <= 1:
                accumulate(steps, current)
                break
            q, u = quasi_primary_split(engine, current)
            accumulate(steps, q)
            current = u
            steps += 1
            assert steps <= weight, "splitting did not terminate within the weight bound"

    if not parts:
        return []
    top = max(i for i, part in parts.items() if part)
    return [parts.get(i, State()) for i in range(top + 1)]


def recompose(engine: ModeEngine, parts: Sequence[State]) -> State:
    """Σ_n L(-1)^n u^n"""
    total = State()
    for n, part in enumerate(parts):
        total = total + engine.l_minus_one_power(part, n)
    return total


def direct_sum_check(engine: ModeEngine, n: int) -> Dict:
    """
    检验 V_n = ker(L(1)|V_n) ⊕ im(L(-1)|V_{n-1})

    Args:
        engine: 模引擎
        n: 权重（n ≠ 1）

    Returns:
        Dict: 维数与交集检验结果
    """
    if n == 1:
        raise ExcludedWeightError("weight 1 is excluded from the L(1)/L(-1) splitting")
    algebra = engine.algebra
    dim = len(basis(algebra, n))
    kernel = kernel_basis(operator_matrix(lambda w: engine.virasoro(1, w), algebra, n, n - 1))
    image_matrix = operator_matrix(lambda w: engine.virasoro(-1, w), algebra, n - 1, n)
    image_columns = [list(col) for col in zip(*image_matrix.entries)] if image_matrix.entries else []
    image_rank = elimination.rank(image_columns, dim) if image_columns else 0

    combined = kernel + image_columns
    combined_rank = elimination.rank(combined, dim) if combined else 0
    success = (len(kernel) + image_rank == dim) and combined_rank == len(kernel) + image_rank
    return {
        'name': f'direct_sum_weight_{n}',
        'success': success,
        'checked': dim,
        'counterexample': None if success else {
            'dim': dim, 'kernel': len(kernel), 'image': image_rank, 'span': combined_rank,
        },
    }
