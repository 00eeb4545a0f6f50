#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验证套件
在截断片上逐条精确检验公理、拆分、根、次数与 O_∞ 性质
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.errors import VOAError
from core.fock import State, basis, dimension
from core.linalg import direct_sum_check, quasi_primary_split, recompose, semi_primary_decompose
from core.modes import ModeEngine, creation_coefficient
from core.radical import RadicalAnalyzer
from core.vanishing import (
    deterministic_kernel, quasi_primaries, quasi_primary_zero_mode_kernel,
    semi_primary_radical_kernel, top_mode_kernel, translation_commutes,
)
from utils.randomizer import SeededRandom, random_state, random_states, random_vector
from utils.state_parser import format_state, parse_state

logger = logging.getLogger(__name__)

SUITES = ('modes', 'linalg', 'radical')

ROUND_TRIP_STATES = 500


def _result(name: str, success: bool, checked: int, counterexample: Optional[Dict] = None) -> Dict:
    return {
        'name': name,
        'success': success,
        'checked': checked,
        'counterexample': None if success else counterexample,
    }


def pentagonal_partition_counts(n: int) -> List[int]:
    """
    用五边形数递推计算 p(0..n)，与基的枚举相互独立

    Args:
        n: 最大权重

    Returns:
        List[int]: 划分数表
    """
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            first = k * (3 * k - 1) // 2
            if first > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - first]
            second = k * (3 * k + 1) // 2
            if second <= m:
                total += sign * p[m - second]
            k += 1
        p[m] = total
    return p


def colored_partition_counts(rank: int, n: int) -> List[int]:
    """r 色划分数 = 划分数序列的 r 重卷积"""
    p = pentagonal_partition_counts(n)
    counts = [1] + [0] * n
    for _ in range(rank):
        counts = [sum(counts[k] * p[m - k] for k in range(m + 1)) for m in range(n + 1)]
    return counts


class Verifier:
    """verify 命令背后的检验集合"""

    def __init__(self, engine: ModeEngine, max_weight: int = 6, seed: int = 1, trials: int = 200):
        """
        初始化验证器

        Args:
            engine: 模引擎
            max_weight: 截断权重 N
            seed: 主种子
            trials: 每个随机检验的试验次数
        """
        self.engine = engine
        self.algebra = engine.algebra
        self.max_weight = max_weight
        self.trials = trials
        self.seed = seed
        self.rng = SeededRandom(seed)
        self.analyzer = RadicalAnalyzer(engine, max_weight)

    def run(self, suite: str = 'all') -> Dict:
        """
        执行套件

        Args:
            suite: all、modes、linalg 或 radical

        Returns:
            Dict: success、suite、checks、failures
        """
        if suite == 'all':
            names = SUITES
        elif suite in SUITES:
            names = (suite,)
        else:
            raise ValueError(f"unknown suite {suite!r}")

        checks: List[Dict] = []
        for name in names:
            for check in getattr(self, f'suite_{name}')():
                logger.info("%s: %s (%d checked)", check['name'],
                            'ok' if check['success'] else 'FAILED', check['checked'])
                checks.append(check)

        failures = [c['name'] for c in checks if not c['success']]
        return {
            'success': not failures,
            'suite': suite,
            'checks': checks,
            'failures': failures,
        }

    # ------------------------------------------------------------------
    # 公共工具
    # ------------------------------------------------------------------

    def _samples(self, bound: Optional[int] = None) -> List[State]:
        return self.analyzer.test_states(bound)

    def _operator_equal(self, left: Callable[[State], State],
                        right: Callable[[State], State], samples: Sequence[State],
                        context: Dict) -> Tuple[bool, int, Optional[Dict]]:
        checked = 0
        for u in samples:
            lhs, rhs = left(u), right(u)
            checked += 1
            if lhs != rhs:
                return False, checked, dict(context, sample=u, lhs=lhs, rhs=rhs)
        return True, checked, None

    # ------------------------------------------------------------------
    # modes
    # ------------------------------------------------------------------

    def suite_modes(self) -> List[Dict]:
        return [
            self.check_heisenberg_bracket(),
            self.check_creation_property(),
            self.check_translation_covariance(),
            self.check_commutator_identity(),
            self.check_virasoro_bracket(),
            self.check_quasi_primary_bracket(),
            self.check_central_charge(),
        ]

    def check_heisenberg_bracket(self) -> Dict:
        """[h_i(m), h_j(n)] = m <h_i, h_j> δ_{m+n,0}"""
        engine = self.engine
        rank = self.algebra.rank
        checked = 0
        for i in range(1, rank + 1):
            for j in range(1, rank + 1):
                for m in range(-3, 4):
                    for n in range(-3, 4):
                        scalar = m * self.algebra.pairing(i, j) if m + n == 0 else Fraction(0)
                        for u in self._samples():
                            lhs = (engine.boson_mode(i, m, engine.boson_mode(j, n, u))
                                   - engine.boson_mode(j, n, engine.boson_mode(i, m, u)))
                            checked += 1
                            if lhs != scalar * u:
                                return _result('heisenberg_bracket', False, checked, {
                                    'i': i, 'j': j, 'm': m, 'n': n, 'sample': u,
                                    'lhs': lhs, 'rhs': scalar * u,
                                })
        return _result('heisenberg_bracket', True, checked)

    def check_creation_property(self) -> Dict:
        """v_{-k-1}|0> = L(-1)^k v / k!"""
        vacuum = State.vacuum()
        checked = 0
        for v in self._samples(min(5, self.max_weight)):
            for k in range(5):
                lhs = self.engine.vertex_mode(v, -k - 1, vacuum)
                rhs = creation_coefficient(k) * self.engine.l_minus_one_power(v, k)
                checked += 1
                if lhs != rhs:
                    return _result('creation_property', False, checked,
                                   {'state': v, 'k': k, 'lhs': lhs, 'rhs': rhs})
        return _result('creation_property', True, checked)

    def check_translation_covariance(self) -> Dict:
        """[L(-1), v_n] = -n v_{n-1}"""
        engine = self.engine
        checked = 0
        for v in self._samples():
            # 高权重的 v 只配低权重的检验态，总权重保持在截断附近
            samples = self._samples(max(2, self.max_weight - v.weight))
            for n in range(-2, v.weight + 2):
                ok, count, counter = self._operator_equal(
                    lambda u: engine.virasoro(-1, engine.vertex_mode(v, n, u))
                    - engine.vertex_mode(v, n, engine.virasoro(-1, u)),
                    lambda u: -n * engine.vertex_mode(v, n - 1, u),
                    samples, {'state': v, 'n': n},
                )
                checked += count
                if not ok:
                    return _result('translation_covariance', False, checked, counter)
        return _result('translation_covariance', True, checked)

    def check_commutator_identity(self) -> Dict:
        """随机齐次 a、b 在 m, n ∈ [-3, 4] 上的交换子公式"""
        rng = self.rng.child('commutator')
        bound = min(4, self.max_weight)
        checked = 0
        for _ in range(max(1, self.trials // 10)):
            a = random_state(self.algebra, rng, 3, weight=rng.randint(1, 3), max_terms=2)
            b = random_state(self.algebra, rng, 3, weight=rng.randint(1, 3), max_terms=2)
            for m in range(-3, 5):
                for n in range(-3, 5):
                    outcome = self.engine.check_commutator(a, b, m, n, bound)
                    checked += outcome['checked']
                    if not outcome['success']:
                        counter = dict(outcome['counterexample'], a=a, b=b, m=m, n=n)
                        return _result('commutator_identity', False, checked, counter)
        return _result('commutator_identity', True, checked)

    def check_virasoro_bracket(self) -> Dict:
        """[L(m), L(n)] = (m-n)L(m+n) + c/12 (m^3-m) δ_{m+n,0}"""
        engine = self.engine
        c = engine.conformal.central_charge
        samples = self._samples(max(0, self.max_weight - 2))
        checked = 0
        for m in range(-2, 3):
            for n in range(-2, 3):
                anomaly = c * (m ** 3 - m) / 12 if m + n == 0 else Fraction(0)
                ok, count, counter = self._operator_equal(
                    lambda u: engine.virasoro(m, engine.virasoro(n, u))
                    - engine.virasoro(n, engine.virasoro(m, u)),
                    lambda u: (m - n) * engine.virasoro(m + n, u) + anomaly * u,
                    samples, {'m': m, 'n': n},
                )
                checked += count
                if not ok:
                    return _result('virasoro_bracket', False, checked, counter)
        return _result('virasoro_bracket', True, checked)

    def check_quasi_primary_bracket(self) -> Dict:
        """L(1)u = 0 时 [L(1), u_t] = (2wt u - t - 2) u_{t+1}；权重 1 时 [L(1), u_0] = 0"""
        engine = self.engine
        samples = self._samples()
        checked = 0
        for n in range(1, min(4, self.max_weight) + 1):
            for u in quasi_primaries(engine, n):
                for t in range(-1, n + 1):
                    ok, count, counter = self._operator_equal(
                        lambda w: engine.virasoro(1, engine.vertex_mode(u, t, w))
                        - engine.vertex_mode(u, t, engine.virasoro(1, w)),
                        lambda w: (2 * n - t - 2) * engine.vertex_mode(u, t + 1, w),
                        samples, {'state': u, 't': t},
                    )
                    checked += count
                    if not ok:
                        return _result('quasi_primary_bracket', False, checked, counter)

        for u in [State({mono: 1}) for mono in basis(self.algebra, 1)]:
            ok, count, counter = self._operator_equal(
                lambda w: engine.virasoro(1, engine.vertex_mode(u, 0, w))
                - engine.vertex_mode(u, 0, engine.virasoro(1, w)),
                lambda w: w.zero(),
                samples, {'state': u, 't': 0},
            )
            checked += count
            if not ok:
                return _result('quasi_primary_bracket', False, checked, counter)
        return _result('quasi_primary_bracket', True, checked)

    def check_central_charge(self) -> Dict:
        measured = self.engine.measured_central_charge()
        expected = Fraction(self.algebra.rank)
        success = measured == expected == self.engine.conformal.central_charge
        return _result('central_charge', success, 1, {'measured': measured, 'expected': expected})

    # ------------------------------------------------------------------
    # linalg
    # ------------------------------------------------------------------

    def suite_linalg(self) -> List[Dict]:
        return [
            self.check_partition_counts(),
            self.check_direct_sums(),
            self.check_splitting(),
            self.check_semi_primary_decomposition(),
            self.check_state_round_trip(),
        ]

    def check_partition_counts(self) -> Dict:
        oracle = colored_partition_counts(self.algebra.rank, self.max_weight)
        for n in range(self.max_weight + 1):
            enumerated = len(basis(self.algebra, n))
            counted = dimension(self.algebra, n)
            if not enumerated == counted == oracle[n]:
                return _result('partition_counts', False, n + 1, {
                    'weight': n, 'enumerated': enumerated, 'counted': counted, 'oracle': oracle[n],
                })
        return _result('partition_counts', True, self.max_weight + 1)

    def check_direct_sums(self) -> Dict:
        checked = 0
        for n in range(self.max_weight + 1):
            if n == 1:
                continue
            outcome = direct_sum_check(self.engine, n)
            checked += 1
            if not outcome['success']:
                return _result('direct_sums', False, checked,
                               dict(outcome['counterexample'], weight=n))
        return _result('direct_sums', True, checked)

    def check_splitting(self) -> Dict:
        """随机 v ∈ V_n（n ≠ 1）拆成 q + L(-1)u"""
        rng = self.rng.child('splitting')
        candidates = [n for n in range(self.max_weight + 1) if n != 1]
        for trial in range(self.trials):
            v = random_state(self.algebra, rng, self.max_weight, weight=rng.choice(candidates))
            q, u = quasi_primary_split(self.engine, v)
            if self.engine.virasoro(1, q) or q + self.engine.virasoro(-1, u) != v:
                return _result('splitting', False, trial + 1, {'state': v, 'q': q, 'u': u})
        return _result('splitting', True, self.trials)

    def check_semi_primary_decomposition(self) -> Dict:
        rng = self.rng.child('semi_primary')
        for trial in range(self.trials):
            v = random_state(self.algebra, rng, self.max_weight)
            parts = semi_primary_decompose(self.engine, v)
            semi_primary = all(
                not self.engine.virasoro(1, part - part.component(1)) for part in parts
            )
            if not semi_primary or recompose(self.engine, parts) != v:
                return _result('semi_primary_decomposition', False, trial + 1,
                               {'state': v, 'parts': parts})
        return _result('semi_primary_decomposition', True, self.trials)

    def check_state_round_trip(self) -> Dict:
        """固定数量的种子随机态：打印后再解析应还原"""
        rng = self.rng.child('state_round_trip')
        states = random_states(self.algebra, rng, ROUND_TRIP_STATES, self.max_weight)
        for trial, state in enumerate(states):
            text = format_state(state)
            parsed = parse_state(text, self.algebra)
            if parsed != state:
                return _result('state_round_trip', False, trial + 1,
                               {'state': state, 'text': text, 'parsed': parsed})
        return _result('state_round_trip', True, len(states))

    # ------------------------------------------------------------------
    # radical
    # ------------------------------------------------------------------

    def suite_radical(self) -> List[Dict]:
        return [
            self.check_radical_round_trip(),
            self.check_radical_completeness(),
            self.check_radical_grading(),
            self.check_degree_consistency(),
            self.check_filtration_nesting(),
            self.check_vanishing_kernels(),
            self.check_commutant(),
            self.check_canonical_form(),
            self.check_oinfinity_containment(),
            self.check_oinfinity_separation(),
        ]

    def _zero_mode_vanishes(self, v: State) -> Optional[State]:
        for u in self._samples():
            if self.engine.zero_mode(v, u):
                return u
        return None

    def check_radical_round_trip(self) -> Dict:
        """v = j1 + (L(0)+L(-1))w 必属于根且可重构"""
        rng = self.rng.child('radical_round_trip')
        engine = self.engine
        for trial in range(self.trials):
            j1 = random_state(self.algebra, rng, 1, weight=1) if rng.randint(0, 3) else State()
            w = random_state(self.algebra, rng, max(0, self.max_weight - 1))
            v = j1 + engine.translate_and_scale(w)
            context = {'j1': j1, 'w': w, 'v': v}

            certificate = self.analyzer.radical_member(v)
            if not certificate.member:
                return _result('radical_round_trip', False, trial + 1, dict(context, stage='member'))
            try:
                j1_found, w_found = self.analyzer.radical_decompose(v)
            except VOAError as exc:
                return _result('radical_round_trip', False, trial + 1,
                               dict(context, stage='decompose', error=str(exc)))
            if (j1_found.weights() not in ([], [1])
                    or j1_found + engine.translate_and_scale(w_found) != v):
                return _result('radical_round_trip', False, trial + 1,
                               dict(context, stage='recompose', j1_found=j1_found, w_found=w_found))
            sample = self._zero_mode_vanishes(v)
            if sample is not None:
                return _result('radical_round_trip', False, trial + 1,
                               dict(context, stage='zero_mode', sample=sample))
        return _result('radical_round_trip', True, self.trials)

    def check_radical_completeness(self) -> Dict:
        """不在根中的随机态都应在截断片上找到零模见证"""
        rng = self.rng.child('radical_completeness')
        outside = 0
        for trial in range(self.trials):
            v = random_state(self.algebra, rng, self.max_weight)
            certificate = self.analyzer.radical_member(v)
            if certificate.member:
                continue
            outside += 1
            if certificate.witness is None:
                return _result('radical_completeness', False, trial + 1,
                               {'state': v, 'note': certificate.note})
        logger.debug("radical completeness: %d of %d samples outside the radical",
                     outside, self.trials)
        return _result('radical_completeness', True, self.trials)

    def _mode_nonzero(self, v: State, n: int, samples: Sequence[Tuple[int, State]]) -> bool:
        # v_n 把权重 k 送到 k + wt v - n - 1，负权重处必为零
        weight = v.weight
        return any(self.engine.vertex_mode(v, n, u)
                   for k, u in samples if k + weight - n - 1 >= 0)

    def check_radical_grading(self) -> Dict:
        """J 不是分次子空间：(L(0)+L(-1))h(-1)^2 属于 J，而它的两个齐次分量都不属于"""
        checked = 0
        for mono in basis(self.algebra, 1):
            square = State({mono + mono: 1})
            v = self.engine.translate_and_scale(square)
            checked += 1
            if not self.analyzer.radical_member(v).member:
                return _result('radical_grading', False, checked, {'state': v, 'stage': 'member'})
            for weight in (2, 3):
                component = v.component(weight)
                checked += 1
                if self.analyzer.radical_member(component).member:
                    return _result('radical_grading', False, checked,
                                   {'state': v, 'component': component, 'weight': weight})
        return _result('radical_grading', True, checked)

    def check_degree_consistency(self) -> Dict:
        """结构次数 = 模扫描次数，非零模集合为 [deg, wt]，且 deg L(-1)^k v = deg v + k"""
        rng = self.rng.child('degree')
        engine = self.engine
        top = min(5, self.max_weight)
        samples = [(u.weight, u) for u in self._samples()]
        for trial in range(self.trials):
            v = random_state(self.algebra, rng, top, weight=rng.randint(1, top))
            weight = v.weight
            structural = self.analyzer.degree(v).degree
            nonzero = [n for n in range(weight + 1) if self._mode_nonzero(v, n, samples)]
            if not nonzero:
                return _result('degree_consistency', False, trial + 1,
                               {'state': v, 'structural': structural,
                                'error': 'witness bound too small'})
            scanned = nonzero[0]
            context = {'state': v, 'structural': structural, 'scanned': scanned}
            if structural != scanned or not 0 <= structural <= weight:
                return _result('degree_consistency', False, trial + 1, context)
            if nonzero != list(range(structural, weight + 1)):
                return _result('degree_consistency', False, trial + 1,
                               dict(context, nonzero_modes=nonzero))

            shifted = v
            for k in range(1, 4):
                shifted = engine.virasoro(-1, shifted)
                if self.analyzer.degree(shifted).degree != structural + k:
                    return _result('degree_consistency', False, trial + 1,
                                   dict(context, translated=k))
        return _result('degree_consistency', True, self.trials)

    def check_filtration_nesting(self) -> Dict:
        """L(-1)^{d-1}j + L(-1)^d u 属于 V^d 与 V^{d-1}，且没有低于 d 的分量"""
        rng = self.rng.child('filtration')
        engine = self.engine
        top = min(5, self.max_weight)
        for trial in range(self.trials):
            d = rng.randint(1, top)
            j = random_state(self.algebra, rng, 1, weight=1) if rng.randint(0, 1) else State()
            u = (random_state(self.algebra, rng, top - d, min_weight=1)
                 if d < top else State())
            v = engine.l_minus_one_power(j, d - 1) + engine.l_minus_one_power(u, d)
            context = {'d': d, 'j': j, 'u': u, 'state': v}
            if any(weight < d for weight in v.weights()):
                return _result('filtration_nesting', False, trial + 1, dict(context, stage='weights'))
            if not self.analyzer.filtration_member(v, d):
                return _result('filtration_nesting', False, trial + 1, dict(context, stage='member'))
            if d > 1 and not self.analyzer.filtration_member(v, d - 1):
                return _result('filtration_nesting', False, trial + 1, dict(context, stage='nested'))
        return _result('filtration_nesting', True, self.trials)

    def check_vanishing_kernels(self) -> Dict:
        checked = 0
        for n in range(1, min(4, self.max_weight) + 1):
            kernels = {
                'top_mode': (top_mode_kernel(self.analyzer, n), 0),
                'semi_primary_radical': (semi_primary_radical_kernel(self.analyzer, n),
                                         dimension(self.algebra, 1) if n == 1 else 0),
                'deterministic': (deterministic_kernel(self.analyzer, n), 0),
            }
            if n >= 2:
                kernels['quasi_primary_zero_mode'] = (quasi_primary_zero_mode_kernel(self.analyzer, n), 0)
            for name, (kernel, expected) in kernels.items():
                checked += 1
                if len(kernel) != expected:
                    return _result('vanishing_kernels', False, checked,
                                   {'kernel': name, 'weight': n, 'found': kernel})

        # 与 L(-1) 交换的只有真空方向
        candidates = [State.vacuum()] + [State({mono: 1}) for mono in basis(self.algebra, 1)]
        for v in candidates:
            checked += 1
            if translation_commutes(self.analyzer, v) != (v == State.vacuum()):
                return _result('vanishing_kernels', False, checked,
                               {'kernel': 'translation_commutant', 'state': v})
        return _result('vanishing_kernels', True, checked)

    def check_commutant(self) -> Dict:
        """H' 取第一个非迷向的基向量；交换子维数应为秩 r-1 的有色划分数"""
        rank = self.algebra.rank
        index = next((i for i in range(rank) if self.algebra.gram[i][i]), None)
        if index is None:
            return _result('commutant', True, 0)
        h_prime = [[Fraction(int(j == index)) for j in range(rank)]]
        bound = min(6, self.max_weight)
        outcome = self.analyzer.tensor_factor_dim_check(h_prime, bound)
        expected = [dimension(rank - 1, n) for n in range(bound + 1)]
        if not outcome['success']:
            return _result('commutant', False, outcome['checked'], outcome['counterexample'])
        if outcome['commutant_dims'] != expected:
            return _result('commutant', False, outcome['checked'],
                           {'dims': outcome['commutant_dims'], 'expected': expected})
        return _result('commutant', True, outcome['checked'])

    def check_canonical_form(self) -> Dict:
        matrix = self.analyzer.canonical_form_matrix()
        gram = [list(row) for row in self.algebra.gram]
        return _result('canonical_form', matrix == gram, 1, {'form': matrix, 'gram': gram})

    def check_oinfinity_containment(self) -> Dict:
        """O_∞ ⊆ J：(L(0)+L(-1))w 同时属于两者，且 O_∞ 证书可重构"""
        rng = self.rng.child('oinfinity_containment')
        engine = self.engine
        for trial in range(self.trials):
            w = random_state(self.algebra, rng, max(0, self.max_weight - 1))
            v = engine.translate_and_scale(w)
            certificate = self.analyzer.oinfinity_member(v)
            if not certificate.member or engine.translate_and_scale(certificate.w) != v:
                return _result('oinfinity_containment', False, trial + 1, {'w': w, 'stage': 'oinfinity'})
            if not self.analyzer.radical_member(v).member:
                return _result('oinfinity_containment', False, trial + 1, {'w': w, 'stage': 'radical'})
        return _result('oinfinity_containment', True, self.trials)

    def check_oinfinity_separation(self) -> Dict:
        """J_1 在动量模上被分离；(L(0)+L(-1))w 在每个动量模上零模为零"""
        checked = 0
        for h in self.analyzer.j1_basis():
            momentum = self.analyzer.witness_momentum(h)
            scalar = self.analyzer.module_zero_mode_matrix(h, momentum, 0).entries[0][0]
            checked += 1
            if not scalar:
                return _result('oinfinity_separation', False, checked,
                               {'state': h, 'momentum': momentum})

        rank = self.algebra.rank
        momenta = [
            tuple(Fraction(0) for _ in range(rank)),
            tuple(Fraction(int(i == 0)) for i in range(rank)),
            tuple(Fraction(-1, i + 2) for i in range(rank)),
        ]
        rng = self.rng.child('oinfinity')
        momenta.append(random_vector(rank, rng))
        for _ in range(max(1, self.trials // 4)):
            w = random_state(self.algebra, rng, max(0, self.max_weight - 1))
            v = self.engine.translate_and_scale(w)
            for momentum in momenta:
                for k in range(self.max_weight + 1):
                    checked += 1
                    if not self.analyzer.module_zero_mode_matrix(v, momentum, k).is_zero():
                        return _result('oinfinity_separation', False, checked,
                                       {'w': w, 'momentum': momentum, 'module_weight': k})
        return _result('oinfinity_separation', True, checked)
