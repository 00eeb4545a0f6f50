#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
引擎、解析器与命令行共用的异常层次
"""


class VOAError(Exception):
    """所有引擎异常的基类"""


class AlgebraError(VOAError):
    """代数配置错误（形状、对称性、玻色子下标）"""


class DegenerateFormError(AlgebraError):
    """双线性型退化"""

    def __init__(self, message: str = "degenerate form"):
        super().__init__(message)


class NotHomogeneousError(VOAError):
    """要求齐次态却收到非齐次态"""


class GradingError(VOAError):
    """算子输出越出目标权重"""


class ExcludedWeightError(VOAError):
    """拆分请求落在被排除的权重上"""


class NotInRadicalError(VOAError):
    """构造性分解发现输入不在根中"""


class WitnessBoundError(VOAError):
    """截断界内找不到非零模见证"""


class DimensionMismatchError(VOAError):
    """矩阵与向量维度不符"""


class StateParseError(VOAError):
    """态表达式解析失败"""

    def __init__(self, message: str, position: int = -1):
        self.position = position
        if position >= 0:
            message = f"{message} at position {position}"
        super().__init__(message)


class ConfigError(VOAError):
    """配置文件取值非法"""


class AlgebraFileError(VOAError):
    """代数定义文件格式错误"""
