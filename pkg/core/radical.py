#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
根与次数
负责根 J(V) 的判定与构造性分解、次数与滤过 V^d、O_∞ 判定及交换子分解检验
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core import elimination
from core.errors import (
    DegenerateFormError, NotHomogeneousError, NotInRadicalError, WitnessBoundError,
)
from core.fock import VACUUM, State, basis, dimension, graded_components
from core.linalg import (
    GradedMatrix, LeftInverse, joint_kernel, left_inverse, operator_matrix, semi_primary_decompose,
)
from core.modes import ModeEngine

logger = logging.getLogger(__name__)


@dataclass
class ZeroModeWitness:
    """非零见证：某个基态 u 使得算子作用非零"""

    weight: int
    state: State
    image: State


@dataclass
class RadicalCertificate:
    """根成员证书"""

    member: bool
    j1: Optional[State] = None
    w: Optional[State] = None
    witness: Optional[ZeroModeWitness] = None
    note: str = ''


@dataclass
class DegreeResult:
    """次数及其结构见证与模见证"""

    degree: int
    structural_witness: Optional[Tuple[State, State]] = None
    mode_witness: Optional[Tuple[int, ZeroModeWitness]] = None
    dropped_vacuum_part: bool = False


@dataclass
class OInfinityCertificate:
    """O_∞ 成员证书；不属于 O_∞ 但属于根时给出动量模见证"""

    member: bool
    w: Optional[State] = None
    radical: Optional[RadicalCertificate] = None
    momentum: Optional[Tuple[Fraction, ...]] = None
    module_scalar: Optional[Fraction] = None


class RadicalAnalyzer:
    """M(1) 的根、次数、滤过与 O_∞ 算法"""

    def __init__(self, engine: ModeEngine, max_weight: int = 6):
        """
        初始化分析器

        Args:
            engine: 模引擎
            max_weight: 见证搜索与算子矩阵的截断权重 N
        """
        self.engine = engine
        self.algebra = engine.algebra
        self.max_weight = max_weight

    # ------------------------------------------------------------------
    # 通用工具
    # ------------------------------------------------------------------

    def test_states(self, bound: Optional[int] = None) -> List[State]:
        """权重 ≤ bound 的全部基态"""
        bound = self.max_weight if bound is None else bound
        return [State({mono: 1}) for n in range(bound + 1) for mono in basis(self.algebra, n)]

    def translation_solver(self, source_weight: int, power: int) -> LeftInverse:
        """
        L(-1)^power: V_source → V_{source+power} 的缓存求解器

        Args:
            source_weight: 源权重（≥ 1，L(-1) 在其上单射）
            power: 幂次

        Returns:
            LeftInverse: 按 (source_weight, power) 缓存
        """
        key = ('translation', source_weight, power)
        solver = self.engine.matrix_cache.get(key)
        if solver is not None:
            return solver

        if power == 0:
            matrix = operator_matrix(lambda s: s, self.algebra, source_weight, source_weight)
        else:
            step = operator_matrix(lambda s: self.engine.virasoro(-1, s), self.algebra,
                                   source_weight + power - 1, source_weight + power)
            if power == 1:
                matrix = step
            else:
                matrix = step @ self.translation_solver(source_weight, power - 1).matrix
        solver = self.engine.matrix_cache[key] = left_inverse(matrix)
        logger.debug("cached L(-1)^%d on weight %d: %d x %d", power, source_weight,
                     *matrix.shape)
        return solver

    def _translate_scale_solve(self, v: State) -> Optional[Tuple[State, State]]:
        """
        自顶向下解 v = r + (L(0)+L(-1))w，r ∈ V_1

        权重 k 处 v_k = k w_k + L(-1) w_{k-1}；L(-1) 在 V_{≥1} 上单射，w 唯一
        """
        if v.component(0):
            return None
        top = v.top_weight
        w = State()
        current = State()
        for k in range(top, 1, -1):
            residual = v.component(k) - k * current
            current = self.translation_solver(k - 1, 1).preimage(residual)
            if current is None:
                return None
            w = w + current
        return v.component(1) - current, w

    def _search(self, action: Callable[[State], State]) -> Optional[ZeroModeWitness]:
        """按权重递增、规范基顺序搜索第一个非零作用"""
        for weight in range(self.max_weight + 1):
            for mono in basis(self.algebra, weight):
                u = State({mono: 1})
                image = action(u)
                if image:
                    return ZeroModeWitness(weight=weight, state=u, image=image)
        return None

    # ------------------------------------------------------------------
    # J_1 与根
    # ------------------------------------------------------------------

    def j1_basis(self) -> List[State]:
        """
        J_1(V) 的基：V_1 上 v ↦ o(v) 在截断片上的核

        Returns:
            List[State]: 对 M(1) 即 h_i(-1)|0>
        """
        samples = self.test_states()
        operators = [lambda v, u=u: self.engine.zero_mode(v, u) for u in samples]
        kernel = joint_kernel(self.algebra, 1, operators)
        assert len(kernel) == len(basis(self.algebra, 1)), "J_1 must be all of V_1"
        return kernel

    def radical_member(self, v: State) -> RadicalCertificate:
        """
        判定 v ∈ J(V) = J_1(V) + (L(0)+L(-1))V

        Args:
            v: 任意态

        Returns:
            RadicalCertificate: 成员时给出 (j1, w)，否则给出零模见证
        """
        if v.is_zero():
            return RadicalCertificate(member=True, j1=State(), w=State())

        solution = self._translate_scale_solve(v)
        if solution is not None:
            j1, w = solution
            return RadicalCertificate(member=True, j1=j1, w=w)

        witness = self._search(lambda u: self.engine.zero_mode(v, u))
        note = ''
        if witness is None:
            note = (f"non-member by linear algebra; no truncated witness found up to "
                    f"{self.max_weight}")
            logger.warning(note)
        return RadicalCertificate(member=False, witness=witness, note=note)

    def radical_decompose(self, v: State, _depth: int = 0) -> Tuple[State, State]:
        """
        按归纳构造 v = j1 + (L(0)+L(-1))w

        Args:
            v: 已知属于根的态

        Returns:
            Tuple[State, State]: (j1, w)

        Raises:
            NotInRadicalError: 归纳基础处 o(v) ≠ 0
        """
        parts = semi_primary_decompose(self.engine, v)
        if not parts:
            return State(), State()

        m = len(parts) - 1
        if m == 0:
            base = parts[0]
            if base.weights() != [1]:
                raise NotInRadicalError("input not in radical")
            if self._search(lambda u: self.engine.zero_mode(base, u)) is not None:
                raise NotInRadicalError("input not in radical")
            return base, State()

        if _depth > (v.top_weight or 0) + 1:
            raise NotInRadicalError("input not in radical")

        x = self.engine.l_minus_one_power(parts[m], m - 1)
        y = v - self.engine.virasoro(-1, x)
        # y - L(0)x 仍在根中且分解长度减一
        j1, w = self.radical_decompose(y - self.engine.virasoro(0, x), _depth + 1)
        return j1, w + x

    # ------------------------------------------------------------------
    # 次数与滤过
    # ------------------------------------------------------------------

    def _filtration_solve(self, v: State, d: int) -> Optional[Tuple[State, State]]:
        # V^d 是分次子空间：权重 d 分量来自 L(-1)^{d-1}J_1，权重 m > d 分量来自 L(-1)^d V_{m-d}
        j, u = State(), State()
        for weight, component in graded_components(v).items():
            if weight < d:
                return None
            if weight == d:
                part = self.translation_solver(1, d - 1).preimage(component)
                if part is None:
                    return None
                j = j + part
            else:
                part = self.translation_solver(weight - d, d).preimage(component)
                if part is None:
                    return None
                u = u + part
        return j, u

    def degree(self, v: State) -> DegreeResult:
        """
        次数：v ∈ V_0 时为 -1；否则为最大的 d 使 v ∈ L(-1)^{d-1}J_1 + L(-1)^d V

        Args:
            v: 任意态；V_0 分量被忽略并在结果中标记

        Returns:
            DegreeResult: 次数、结构见证与模见证
        """
        weights = v.weights()
        if not weights or weights == [0]:
            return DegreeResult(degree=-1)

        dropped = weights[0] == 0
        core = v - v.component(0)
        found = 0
        structural = None
        for d in range(1, core.top_weight + 1):
            solution = self._filtration_solve(core, d)
            if solution is None:
                break
            found, structural = d, solution

        witness = self._search(lambda u: self.engine.vertex_mode(core, found, u))
        return DegreeResult(
            degree=found,
            structural_witness=structural,
            mode_witness=(found, witness) if witness is not None else None,
            dropped_vacuum_part=dropped,
        )

    def degree_witness(self, v: State, witness_weight_bound: Optional[int] = None) -> int:
        """
        模扫描得到的次数：最小的 n ≥ 0 使 v_n 在截断片上非零

        Args:
            v: 权重 ≥ 1 的齐次态
            witness_weight_bound: 截断权重，默认取分析器的 N

        Returns:
            int: 次数

        Raises:
            WitnessBoundError: 0 ≤ n ≤ wt v 内均未找到非零模
        """
        if v.is_zero() or not v.is_homogeneous():
            raise NotHomogeneousError("degree witness needs a nonzero homogeneous state")
        weight = v.weight
        if weight < 1:
            raise NotHomogeneousError("degree witness needs weight at least 1")

        bound = self.max_weight if witness_weight_bound is None else witness_weight_bound
        samples = self.test_states(bound)
        for n in range(weight + 1):
            if any(self.engine.vertex_mode(v, n, u) for u in samples):
                return n
        raise WitnessBoundError("witness bound too small")

    def filtration_member(self, v: State, d: int) -> bool:
        """v ∈ V^d（d ≥ 1）"""
        if d < 1:
            raise ValueError("filtration index must be at least 1")
        return self._filtration_solve(v, d) is not None

    # ------------------------------------------------------------------
    # O_∞ 与动量模
    # ------------------------------------------------------------------

    def module_zero_mode_matrix(self, v: State, momentum: Sequence[Fraction],
                                module_weight: int) -> GradedMatrix:
        """o(v) 在 M(1, λ) 权重 k 片上的矩阵"""
        return operator_matrix(lambda w: self.engine.zero_mode(v, w), self.algebra,
                               module_weight, module_weight, momentum)

    def witness_momentum(self, j1: State) -> Tuple[Fraction, ...]:
        """
        选择动量 λ 使 o(j1) 在模真空上非零

        Args:
            j1: V_1 中的非零态

        Returns:
            Tuple: 默认取 j1 本身（Gram 等同）；<j1, j1> = 0 时解 <j1, λ> = 1
        """
        coeffs = [j1.coefficient(((i, 1),)) for i in range(1, self.algebra.rank + 1)]
        if self.algebra.pair_vectors(coeffs, coeffs):
            return tuple(coeffs)
        row = [sum((coeffs[a] * self.algebra.gram[a][b] for a in range(self.algebra.rank)),
                   Fraction(0)) for b in range(self.algebra.rank)]
        k = next(i for i, x in enumerate(row) if x)
        momentum = [Fraction(0)] * self.algebra.rank
        momentum[k] = 1 / row[k]
        return tuple(momentum)

    def oinfinity_member(self, v: State) -> OInfinityCertificate:
        """
        判定 v ∈ O_∞(V) = (L(0)+L(-1))V

        Args:
            v: 任意态

        Returns:
            OInfinityCertificate: 成员时给出 w；属于根但不属于 O_∞ 时给出动量模见证
        """
        if v.is_zero():
            return OInfinityCertificate(member=True, w=State())

        solution = self._translate_scale_solve(v)
        if solution is not None and not solution[0]:
            return OInfinityCertificate(member=True, w=solution[1])

        radical = self.radical_member(v)
        certificate = OInfinityCertificate(member=False, radical=radical)
        if radical.member and radical.j1:
            momentum = self.witness_momentum(radical.j1)
            matrix = self.module_zero_mode_matrix(v, momentum, 0)
            certificate.momentum = momentum
            certificate.module_scalar = matrix.entries[0][0]
        return certificate

    # ------------------------------------------------------------------
    # 交换子与典范双线性型
    # ------------------------------------------------------------------

    def _check_subspace(self, h_prime: Sequence[Sequence[Fraction]]) -> List[Tuple[Fraction, ...]]:
        vectors = [self.algebra.check_vector(h) for h in h_prime]
        restricted = [[self.algebra.pair_vectors(a, b) for b in vectors] for a in vectors]
        if not vectors:
            raise DegenerateFormError("degenerate form: empty subspace")
        elimination.invert(restricted)
        return vectors

    def commutant_basis(self, h_prime: Sequence[Sequence[Fraction]], n: int) -> List[State]:
        """
        交换子 W 在权重 n 的基

        Args:
            h_prime: H 的子空间（向量列表），限制型须非退化
            n: 权重

        Returns:
            List[State]: {v ∈ V_n : h_m v = 0, h ∈ H', 1 ≤ m ≤ n}
        """
        vectors = self._check_subspace(h_prime)
        if n == 0:
            return [State.vacuum()]
        operators = [lambda v, h=h, m=m: self.engine.vector_mode(h, m, v)
                     for h in vectors for m in range(1, n + 1)]
        return joint_kernel(self.algebra, n, operators)

    def tensor_factor_dim_check(self, h_prime: Sequence[Sequence[Fraction]],
                                max_weight: Optional[int] = None) -> Dict:
        """
        检验 dim V_n = Σ_k dim M(1)'_k · dim W_{n-k}

        Args:
            h_prime: H 的子空间
            max_weight: 检验到的权重 N

        Returns:
            Dict: 检验结果及交换子维数表
        """
        vectors = self._check_subspace(h_prime)
        bound = self.max_weight if max_weight is None else max_weight
        commutant_dims = [len(self.commutant_basis(vectors, n)) for n in range(bound + 1)]
        for n in range(bound + 1):
            expected = dimension(self.algebra, n)
            convolution = sum(dimension(len(vectors), k) * commutant_dims[n - k]
                              for k in range(n + 1))
            if expected != convolution:
                return {
                    'name': 'tensor_factor_dimensions',
                    'success': False,
                    'checked': n + 1,
                    'counterexample': {'weight': n, 'dim': expected, 'convolution': convolution},
                    'commutant_dims': commutant_dims,
                }
        return {
            'name': 'tensor_factor_dimensions',
            'success': True,
            'checked': bound + 1,
            'counterexample': None,
            'commutant_dims': commutant_dims,
        }

    def canonical_form_matrix(self) -> List[List[Fraction]]:
        """V_1 上 <u, v> = u_1 v 的矩阵"""
        states = [State({mono: 1}) for mono in basis(self.algebra, 1)]
        return [[self.engine.vertex_mode(u, 1, v).coefficient(VACUUM) for v in states]
                for u in states]

