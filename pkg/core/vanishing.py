#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
模消失检验
把“某类算子为零则态必为零”的结论改写为截断片上的公共核计算
"""

from typing import List

from core.fock import State
from core.linalg import joint_kernel
from core.modes import ModeEngine
from core.radical import RadicalAnalyzer


def _samples(analyzer: RadicalAnalyzer) -> List[State]:
    return analyzer.test_states()


def top_mode_kernel(analyzer: RadicalAnalyzer, n: int) -> List[State]:
    """{v ∈ V_n : v_n = 0 在权重 ≤ N 的片上}；n ≥ 1 时应为空"""
    engine = analyzer.engine
    operators = [lambda v, u=u: engine.vertex_mode(v, n, u) for u in _samples(analyzer)]
    return joint_kernel(analyzer.algebra, n, operators)


def semi_primary_radical_kernel(analyzer: RadicalAnalyzer, n: int) -> List[State]:
    """{v ∈ V_n : L(1)v = 0, o(v) = 0}；n ≥ 2 时应为空，n = 1 时为整个 V_1"""
    engine = analyzer.engine
    operators = [lambda v: engine.virasoro(1, v)]
    operators += [lambda v, u=u: engine.zero_mode(v, u) for u in _samples(analyzer)]
    return joint_kernel(analyzer.algebra, n, operators)


def quasi_primary_zero_mode_kernel(analyzer: RadicalAnalyzer, n: int) -> List[State]:
    """{v ∈ V_n : L(1)v = 0, v_0 = 0}；n ≥ 2 时应为空"""
    engine = analyzer.engine
    operators = [lambda v: engine.virasoro(1, v)]
    operators += [lambda v, u=u: engine.vertex_mode(v, 0, u) for u in _samples(analyzer)]
    return joint_kernel(analyzer.algebra, n, operators)


def deterministic_kernel(analyzer: RadicalAnalyzer, n: int) -> List[State]:
    """{v ∈ V_n : L(1)v = 0, p(v) = 0}；n ≥ 1 时应为空"""
    engine = analyzer.engine
    operators = [lambda v: engine.virasoro(1, v)]
    operators += [lambda v, u=u: engine.p_mode(v, u) for u in _samples(analyzer)]
    return joint_kernel(analyzer.algebra, n, operators)


def quasi_primaries(engine: ModeEngine, n: int) -> List[State]:
    """ker(L(1)|V_n) 的基"""
    return joint_kernel(engine.algebra, n, [lambda v: engine.virasoro(1, v)])


def translation_commutes(analyzer: RadicalAnalyzer, v: State) -> bool:
    """
    [L(-1), v_n] 是否对所有相关 n 在截断片上为零

    Args:
        analyzer: 提供截断权重 N
        v: 齐次态

    Returns:
        bool: 全部为零时为 True
    """
    engine = analyzer.engine
    bound = analyzer.max_weight
    weight = v.weight if v else 0
    for n in range(-1, weight + bound):
        for u in analyzer.test_states(bound - 1):
            lhs = engine.virasoro(-1, engine.vertex_mode(v, n, u))
            rhs = engine.vertex_mode(v, n, engine.virasoro(-1, u))
            if lhs != rhs:
                return False
    return True
