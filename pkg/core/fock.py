#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fock 空间模块
负责玻色子代数配置、M(1) 的有色划分基、精确态运算与动量模
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.elimination import invert
from core.errors import AlgebraError, NotHomogeneousError

Scalar = Fraction
# ((玻色子下标, 能级), ...)，按 (能级降序, 下标升序) 排列；空元组即真空 |0>
Monomial = Tuple[Tuple[int, int], ...]
VACUUM: Monomial = ()


def to_scalar(value: Union[int, str, Fraction]) -> Fraction:
    """
    转换为精确有理数

    Args:
        value: 整数、Fraction 或 "p/q" 字符串

    Returns:
        Fraction: 最简形式、分母为正
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _factor_key(factor: Tuple[int, int]) -> Tuple[int, int]:
    return (-factor[1], factor[0])


def make_monomial(factors: Iterable[Tuple[int, int]]) -> Monomial:
    """
    构造规范单项式

    Args:
        factors: (玻色子下标, 能级) 对，顺序任意

    Returns:
        Monomial: 排序后的因子元组
    """
    result = []
    for index, level in factors:
        if level <= 0:
            raise AlgebraError(f"creation level must be positive, got {level}")
        result.append((int(index), int(level)))
    return tuple(sorted(result, key=_factor_key))


def monomial_weight(monomial: Monomial) -> int:
    """单项式权重 = 能级之和"""
    return sum(level for _, level in monomial)


def monomial_order_key(monomial: Monomial) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """全序：先按权重，再按因子列表的字典序"""
    return (monomial_weight(monomial), tuple(_factor_key(f) for f in monomial))


@dataclass(frozen=True)
class BosonAlgebra:
    """秩 r 的玻色子代数：对称非退化 Gram 矩阵定义 Heisenberg 对易关系"""

    rank: int
    gram: Tuple[Tuple[Fraction, ...], ...]
    gram_inverse: Tuple[Tuple[Fraction, ...], ...]

    def check_index(self, index: int) -> None:
        if index < 1:
            raise AlgebraError(f"boson index must be positive, got {index}")
        if index > self.rank:
            raise AlgebraError(f"boson index {index} exceeds rank {self.rank}")

    def pairing(self, i: int, j: int) -> Fraction:
        """<h_i, h_j>，下标从 1 开始"""
        return self.gram[i - 1][j - 1]

    def pair_vectors(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        """任意两个 H 向量的内积"""
        total = Fraction(0)
        for a in range(self.rank):
            if not u[a]:
                continue
            for b in range(self.rank):
                if v[b]:
                    total += u[a] * self.gram[a][b] * v[b]
        return total

    def momentum_pairing(self, index: int, momentum: Sequence[Fraction]) -> Fraction:
        """<h_i, λ>，即 h_i(0) 在动量模上的标量"""
        row = self.gram[index - 1]
        return sum((row[j] * momentum[j] for j in range(self.rank)), Fraction(0))

    def check_vector(self, vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if len(vector) != self.rank:
            raise AlgebraError(f"vector has length {len(vector)}, expected {self.rank}")
        return tuple(to_scalar(x) for x in vector)


def make_algebra(rank: int, gram: Sequence[Sequence[Union[int, str, Fraction]]]) -> BosonAlgebra:
    """
    构造玻色子代数

    Args:
        rank: 秩 r
        gram: r×r 对称矩阵

    Returns:
        BosonAlgebra: 已验证非退化并缓存逆矩阵的代数

    Raises:
        AlgebraError: 形状不符或不对称
        DegenerateFormError: Gram 矩阵奇异
    """
    if not isinstance(rank, int) or rank < 1:
        raise AlgebraError(f"rank must be a positive integer, got {rank!r}")
    if len(gram) != rank or any(len(row) != rank for row in gram):
        raise AlgebraError(f"gram must be {rank}x{rank}")

    matrix = tuple(tuple(to_scalar(x) for x in row) for row in gram)
    for i in range(rank):
        for j in range(i + 1, rank):
            if matrix[i][j] != matrix[j][i]:
                raise AlgebraError("gram matrix is not symmetric")

    inverse = invert([list(row) for row in matrix])
    return BosonAlgebra(
        rank=rank,
        gram=matrix,
        gram_inverse=tuple(tuple(row) for row in inverse),
    )


def identity_algebra(rank: int) -> BosonAlgebra:
    """正交归一 Gram 矩阵的快捷构造"""
    return make_algebra(rank, [[int(i == j) for j in range(rank)] for i in range(rank)])


def _rank_of(algebra: Union[BosonAlgebra, int]) -> int:
    return algebra.rank if isinstance(algebra, BosonAlgebra) else int(algebra)


def _colored_partitions(n: int, rank: int, max_level: int, min_index: int) -> Iterator[Monomial]:
    if n == 0:
        yield VACUUM
        return
    for level in range(min(n, max_level), 0, -1):
        start = min_index if level == max_level else 1
        for index in range(start, rank + 1):
            for rest in _colored_partitions(n - level, rank, level, index):
                yield ((index, level),) + rest


@lru_cache(maxsize=None)
def _basis(rank: int, n: int) -> Tuple[Monomial, ...]:
    return tuple(_colored_partitions(n, rank, n, 1))


def basis(algebra: Union[BosonAlgebra, int], n: int) -> List[Monomial]:
    """
    权重 n 的单项式基

    Args:
        algebra: 代数或秩
        n: 非负权重

    Returns:
        List[Monomial]: 规范顺序的单项式，个数等于 r 色划分数
    """
    if n < 0:
        return []
    return list(_basis(_rank_of(algebra), n))


@lru_cache(maxsize=None)
def _colored_counts(rank: int, n: int) -> Tuple[int, ...]:
    counts = [1] + [0] * n
    for level in range(1, n + 1):
        for _ in range(rank):
            for w in range(level, n + 1):
                counts[w] += counts[w - level]
    return tuple(counts)


def dimension(algebra: Union[BosonAlgebra, int], n: int) -> int:
    """dim V_n，即 r 色划分数"""
    if n < 0:
        return 0
    return _colored_counts(_rank_of(algebra), n)[n]


class State:
    """M(1) 中的有限稀疏线性组合，系数为精确有理数"""

    momentum: Optional[Tuple[Fraction, ...]] = None

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        acc: Dict[Monomial, Fraction] = defaultdict(Fraction)
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for factors, coeff in items:
                acc[make_monomial(factors)] += to_scalar(coeff)
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def vacuum(cls) -> "State":
        return cls({VACUUM: 1})

    @classmethod
    def monomial(cls, factors: Iterable[Tuple[int, int]], coeff=1) -> "State":
        return cls({make_monomial(factors): coeff})

    def _like(self, terms: Mapping[Monomial, Fraction]) -> "State":
        """用已规范的单项式构造同类（同动量）态"""
        new = object.__new__(type(self))
        new.__dict__.update(self.__dict__)
        new._terms = {m: c for m, c in terms.items() if c}
        return new

    def zero(self) -> "State":
        return self._like({})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """按规范顺序列出 (单项式, 系数)"""
        return sorted(self._terms.items(), key=lambda item: monomial_order_key(item[0]))

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def weights(self) -> List[int]:
        return sorted({monomial_weight(m) for m in self._terms})

    @property
    def top_weight(self) -> Optional[int]:
        weights = self.weights()
        return weights[-1] if weights else None

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        weights = self.weights()
        if len(weights) != 1:
            raise NotHomogeneousError("state is not homogeneous of a single weight")
        return weights[0]

    def component(self, n: int) -> "State":
        return self._like({m: c for m, c in self._terms.items() if monomial_weight(m) == n})

    def _check_compatible(self, other: "State") -> None:
        if not isinstance(other, State):
            raise TypeError(f"cannot combine State with {type(other).__name__}")
        if type(self) is not type(other) or self.momentum != other.momentum:
            raise ValueError("states live in different modules")

    def __add__(self, other: "State") -> "State":
        self._check_compatible(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return self._like(acc)

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __neg__(self) -> "State":
        return self._like({m: -c for m, c in self._terms.items()})

    def __mul__(self, scalar) -> "State":
        if isinstance(scalar, State):
            return NotImplemented
        s = to_scalar(scalar)
        return self._like({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "State":
        return self * (1 / to_scalar(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return (type(self) is type(other) and self.momentum == other.momentum
                and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.momentum, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = []
        for mono, coeff in self.items():
            atoms = "".join(f"h{i}(-{lvl})" for i, lvl in mono)
            parts.append(f"{coeff}*{atoms}|0>")
        return f"{type(self).__name__}({' + '.join(parts)})"


class ModuleState(State):
    """动量 λ 的 Fock 模 M(1, λ) 中的元素，基与 M(1) 相同"""

    def __init__(self, momentum: Sequence[Union[int, str, Fraction]],
                 terms: Union[Mapping, Iterable, None] = None):
        super().__init__(terms)
        self.momentum = tuple(to_scalar(x) for x in momentum)

    @classmethod
    def vacuum(cls, momentum: Sequence = ()) -> "ModuleState":
        return cls(momentum, {VACUUM: 1})

    def __repr__(self) -> str:
        inner = super().__repr__()
        return f"{inner[:-1]}; momentum={[str(x) for x in self.momentum]})"


def canonicalize(state: Union[State, Mapping, Iterable]) -> State:
    """
    规范化：因子排序、合并同类项、去掉零系数；幂等

    Args:
        state: State，或未规范的 {因子序列: 系数} 映射 / (因子序列, 系数) 序列

    Returns:
        State: 规范形式
    """
    if isinstance(state, ModuleState):
        return ModuleState(state.momentum, state.terms)
    if isinstance(state, State):
        return State(state.terms)
    return State(state)


def graded_components(state: State) -> Dict[int, State]:
    """
    按权重分解

    Args:
        state: 任意态

    Returns:
        Dict[int, State]: 权重 → 齐次分量，按权重升序；各分量之和还原输入
    """
    buckets: Dict[int, Dict[Monomial, Fraction]] = defaultdict(dict)
    for mono, coeff in state.items():
        buckets[monomial_weight(mono)][mono] = coeff
    return {w: state._like(buckets[w]) for w in sorted(buckets)}


def state_from_coordinates(coordinates: Sequence[Fraction], monomials: Sequence[Monomial],
                           like: Optional[State] = None) -> State:
    """坐标向量 → 态；like 决定所属模"""
    terms = {m: Fraction(c) for m, c in zip(monomials, coordinates) if c}
    template = like if like is not None else State()
    return template._like(terms)


def coordinates(state: State, monomials: Sequence[Monomial]) -> List[Fraction]:
    """态在给定单项式序列上的坐标"""
    return [state.coefficient(m) for m in monomials]
