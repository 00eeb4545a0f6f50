#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
随机生成器
由单个 64 位种子派生出互不干扰的子随机流，并生成随机态
"""

import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from cryptography.hazmat.backends import default_backend
from cryptography.hazmat.primitives import hashes

from core.fock import BosonAlgebra, State, basis

SEED_MASK = (1 << 64) - 1


class SeededRandom:
    """可分裂的确定性随机源"""

    def __init__(self, seed: int, label: str = ''):
        """
        初始化随机源

        Args:
            seed: 64 位主种子
            label: 子流标签；空标签即根流
        """
        self.seed = int(seed) & SEED_MASK
        self.label = label
        self._random = random.Random(self.derive_seed(self.seed, label))

    @staticmethod
    def derive_seed(seed: int, label: str) -> int:
        """
        由主种子和标签派生子种子

        Args:
            seed: 主种子
            label: 子流标签

        Returns:
            int: SHA-256 前 8 字节
        """
        digest = hashes.Hash(hashes.SHA256(), backend=default_backend())
        digest.update(f"{seed}/{label}".encode())
        return int.from_bytes(digest.finalize()[:8], 'big')

    def child(self, label: str) -> "SeededRandom":
        return SeededRandom(self.seed, f"{self.label}/{label}" if self.label else label)

    def randint(self, low: int, high: int) -> int:
        return self._random.randint(low, high)

    def choice(self, items: Sequence):
        return self._random.choice(items)

    def rational(self, max_numerator: int = 5, max_denominator: int = 4) -> Fraction:
        """非零小有理数"""
        numerator = 0
        while numerator == 0:
            numerator = self._random.randint(-max_numerator, max_numerator)
        return Fraction(numerator, self._random.randint(1, max_denominator))


def random_state(algebra: BosonAlgebra, rng: SeededRandom, max_weight: int,
                 weight: Optional[int] = None, min_weight: int = 0,
                 max_terms: int = 4) -> State:
    """
    随机非零态

    Args:
        algebra: 玻色子代数
        rng: 随机源
        max_weight: 非齐次时的最高权重
        weight: 给定时生成该权重的齐次态
        min_weight: 非齐次时的最低权重
        max_terms: 项数上限

    Returns:
        State: 系数为小有理数的非零态
    """
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            n = weight if weight is not None else rng.randint(min_weight, max_weight)
            mono = rng.choice(basis(algebra, n))
            terms[mono] = terms.get(mono, Fraction(0)) + rng.rational()
        state = State(terms)
        if state:
            return state


def random_vector(rank: int, rng: SeededRandom) -> Tuple[Fraction, ...]:
    """随机非零动量向量"""
    while True:
        vector = tuple(Fraction(rng.randint(-2, 2)) for _ in range(rank))
        if any(vector):
            return vector


def random_states(algebra: BosonAlgebra, rng: SeededRandom, count: int,
                  max_weight: int, **kwargs) -> List[State]:
    return [random_state(algebra, rng, max_weight, **kwargs) for _ in range(count)]
