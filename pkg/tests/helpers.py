# -*- coding: utf-8 -*-
"""
测试辅助函数
"""

from core.fock import State


def h(level: int, index: int = 1, coeff=1) -> State:
    """单个产生算子作用在真空上"""
    return State.monomial([(index, level)], coeff)


def hh(*factors, coeff=1) -> State:
    """多个产生算子：hh((1, 1), (1, 1)) = h1(-1)h1(-1)|0>"""
    return State.monomial(factors, coeff)
