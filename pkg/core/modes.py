#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
模作用引擎
负责 Heisenberg 模 h_m、一般顶点算子模 v_n、Virasoro 模 L(n)、零模 o(v) 与 p(v)
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import NotHomogeneousError
from core.fock import (
    VACUUM, BosonAlgebra, Monomial, State, basis, graded_components,
    make_monomial, monomial_weight,
)

logger = logging.getLogger(__name__)

Terms = Dict[Monomial, Fraction]


def binomial(top: int, k: int) -> Fraction:
    """
    广义二项式系数 C(top, k)，top 可为负

    Args:
        top: 上指标（任意整数）
        k: 下指标

    Returns:
        Fraction: 精确值；k < 0 时为 0
    """
    if k < 0:
        return Fraction(0)
    if top >= 0:
        return Fraction(comb(top, k))
    # C(-n, k) = (-1)^k C(n+k-1, k)
    return Fraction((-1) ** k * comb(-top + k - 1, k))


@dataclass(frozen=True)
class ConformalVector:
    """共形向量 ω 及其中心荷"""

    omega: State
    central_charge: Fraction


class ModeEngine:
    """M(1) 及其动量模上的精确模作用"""

    def __init__(self, algebra: BosonAlgebra, memoize: bool = True):
        """
        初始化模引擎

        Args:
            algebra: 玻色子代数
            memoize: 是否缓存单项式层面的模作用
        """
        self.algebra = algebra
        self._cache: Optional[Dict[tuple, Terms]] = {} if memoize else None
        # 分次片之间的算子矩阵及其求解器，按 (名称, 权重, ...) 缓存
        self.matrix_cache: Dict[tuple, object] = {}
        self.conformal = ConformalVector(
            omega=self._build_omega(),
            central_charge=Fraction(algebra.rank),
        )

    @property
    def omega(self) -> State:
        return self.conformal.omega

    def _build_omega(self) -> State:
        # ω = 1/2 Σ g^{ab} h_a(-1) h_b(-1)|0>
        terms: Dict[Monomial, Fraction] = defaultdict(Fraction)
        inverse = self.algebra.gram_inverse
        for a in range(self.algebra.rank):
            for b in range(self.algebra.rank):
                if inverse[a][b]:
                    mono = make_monomial([(a + 1, 1), (b + 1, 1)])
                    terms[mono] += inverse[a][b] / 2
        return State(terms)

    def cache_size(self) -> int:
        return len(self._cache) if self._cache is not None else 0

    # ------------------------------------------------------------------
    # 单项式层面
    # ------------------------------------------------------------------

    def _boson_terms(self, index: int, m: int, mono: Monomial,
                     momentum: Optional[Tuple[Fraction, ...]]) -> Terms:
        if m < 0:
            return {make_monomial(mono + ((index, -m),)): Fraction(1)}
        if m == 0:
            if momentum is None:
                return {}
            scalar = self.algebra.momentum_pairing(index, momentum)
            return {mono: scalar} if scalar else {}

        out: Terms = defaultdict(Fraction)
        row = self.algebra.gram[index - 1]
        for pos, (j, level) in enumerate(mono):
            if level == m and row[j - 1]:
                out[mono[:pos] + mono[pos + 1:]] += m * row[j - 1]
        return out

    def _boson_on_terms(self, index: int, m: int, terms: Terms,
                        momentum: Optional[Tuple[Fraction, ...]]) -> Terms:
        out: Terms = defaultdict(Fraction)
        for mono, coeff in terms.items():
            for target, c in self._boson_terms(index, m, mono, momentum).items():
                out[target] += coeff * c
        return out

    def _mode_terms(self, a: Monomial, n: int, b: Monomial,
                    momentum: Optional[Tuple[Fraction, ...]]) -> Terms:
        """(a)_n b，a 与 b 均为单项式"""
        key = (a, n, b, momentum)
        if self._cache is not None:
            cached = self._cache.get(key)
            if cached is not None:
                return cached

        if not a:
            result: Terms = {b: Fraction(1)} if n == -1 else {}
        else:
            result = self._peel(a, n, b, momentum)

        result = {m: c for m, c in result.items() if c}
        if self._cache is not None:
            self._cache[key] = result
        return result

    def _peel(self, a: Monomial, n: int, b: Monomial,
              momentum: Optional[Tuple[Fraction, ...]]) -> Terms:
        # a = h_i(-k) rest；迭代公式
        # (h_{-k} rest)_n = Σ_j C(k+j-1, j) [h_{-k-j} rest_{n+j} - (-1)^k rest_{n-k-j} h_j]
        (index, k), rest = a[0], a[1:]
        wb = monomial_weight(b)
        wrest = monomial_weight(rest)
        out: Terms = defaultdict(Fraction)

        for j in range(0, wb + wrest - n):
            inner = self._mode_terms(rest, n + j, b, momentum)
            if not inner:
                continue
            coeff = comb(k + j - 1, j)
            for mono, c in self._boson_on_terms(index, -k - j, inner, momentum).items():
                out[mono] += coeff * c

        sign = -1 if k % 2 == 0 else 1
        for j in range(0, wb + 1):
            lowered = self._boson_terms(index, j, b, momentum)
            if not lowered:
                continue
            coeff = sign * comb(k + j - 1, j)
            for mid, c_mid in lowered.items():
                for mono, c in self._mode_terms(rest, n - k - j, mid, momentum).items():
                    out[mono] += coeff * c_mid * c
        return out

    # ------------------------------------------------------------------
    # 态层面
    # ------------------------------------------------------------------

    def boson_mode(self, index: int, m: int, w: State) -> State:
        """
        h_i ⊗ t^m 的作用

        Args:
            index: 玻色子下标（从 1 开始）
            m: 模指标；m<0 产生，m>0 湮灭，m=0 在动量模上为 <h_i, λ>
            w: State 或 ModuleState

        Returns:
            State: 与 w 同类的结果
        """
        self.algebra.check_index(index)
        return w._like(self._boson_on_terms(index, m, w._terms, w.momentum))

    def vector_mode(self, vector: Sequence[Fraction], m: int, w: State) -> State:
        """H 中任意向量 h = Σ c_i h_i 的模 h_m"""
        vector = self.algebra.check_vector(vector)
        out: Terms = defaultdict(Fraction)
        for i, c in enumerate(vector, start=1):
            if not c:
                continue
            for mono, value in self._boson_on_terms(i, m, w._terms, w.momentum).items():
                out[mono] += c * value
        return w._like(out)

    def vertex_mode(self, v: State, n: int, w: State) -> State:
        """
        顶点算子模 v_n w

        Args:
            v: M(1) 中的态
            n: 模指标
            w: State 或 ModuleState

        Returns:
            State: 对 v 与 w 双线性
        """
        out: Terms = defaultdict(Fraction)
        for a, ca in v._terms.items():
            for b, cb in w._terms.items():
                for mono, c in self._mode_terms(a, n, b, w.momentum).items():
                    out[mono] += ca * cb * c
        return w._like(out)

    def virasoro(self, n: int, w: State) -> State:
        """L(n) = ω_{n+1}"""
        return self.vertex_mode(self.omega, n + 1, w)

    def l_minus_one_power(self, v: State, k: int) -> State:
        """L(-1)^k v"""
        for _ in range(k):
            v = self.virasoro(-1, v)
        return v

    def translate_and_scale(self, w: State) -> State:
        """(L(0) + L(-1)) w"""
        return self.virasoro(0, w) + self.virasoro(-1, w)

    def zero_mode(self, v: State, w: State) -> State:
        """o(v) = Σ_i (v^i)_{i-1}，按齐次分量线性延拓"""
        result = w.zero()
        for weight, component in graded_components(v).items():
            result = result + self.vertex_mode(component, weight - 1, w)
        return result

    def p_mode(self, v: State, w: State) -> State:
        """p(v) = Σ_i (v^i)_{i-2}"""
        result = w.zero()
        for weight, component in graded_components(v).items():
            result = result + self.vertex_mode(component, weight - 2, w)
        return result

    def measured_central_charge(self) -> Fraction:
        """由 [L(2), L(-2)]|0> = (c/2)|0> 计算中心荷"""
        vac = State.vacuum()
        value = self.virasoro(2, self.virasoro(-2, vac))
        return 2 * value.coefficient(VACUUM)

    # ------------------------------------------------------------------
    # 恒等式检验
    # ------------------------------------------------------------------

    def check_commutator(self, a: State, b: State, m: int, n: int,
                         test_weight_bound: int) -> Dict:
        """
        检验 [a_m, b_n] = Σ_{t≥0} C(m,t) (a_t b)_{m+n-t}

        Args:
            a: 齐次态
            b: 齐次态
            m: a 的模指标
            n: b 的模指标
            test_weight_bound: 检验到的最高基权重

        Returns:
            Dict: 检验结果（success、checked、counterexample）
        """
        for name, state in (("a", a), ("b", b)):
            if state and not state.is_homogeneous():
                raise NotHomogeneousError(f"{name} must be homogeneous")

        weight_a = a.weight if a else 0
        weight_b = b.weight if b else 0
        iterates: List[Tuple[Fraction, int, State]] = []
        for t in range(0, max(weight_a + weight_b, 0)):
            coeff = binomial(m, t)
            if not coeff:
                continue
            product = self.vertex_mode(a, t, b)
            if product:
                iterates.append((coeff, m + n - t, product))

        checked = 0
        for weight in range(test_weight_bound + 1):
            for mono in basis(self.algebra, weight):
                w = State({mono: 1})
                lhs = (self.vertex_mode(a, m, self.vertex_mode(b, n, w))
                       - self.vertex_mode(b, n, self.vertex_mode(a, m, w)))
                rhs = w.zero()
                for coeff, mode, product in iterates:
                    rhs = rhs + coeff * self.vertex_mode(product, mode, w)
                checked += 1
                if lhs != rhs:
                    logger.debug("commutator fails: m=%d n=%d on %r", m, n, mono)
                    return {
                        'name': 'commutator',
                        'success': False,
                        'checked': checked,
                        'counterexample': {'basis': mono, 'lhs': lhs, 'rhs': rhs},
                    }

        return {'name': 'commutator', 'success': True, 'checked': checked, 'counterexample': None}


def creation_coefficient(k: int) -> Fraction:
    """v_{-k-1}|0> = L(-1)^k v / k! 中的 1/k!"""
    return Fraction(1, factorial(k))
