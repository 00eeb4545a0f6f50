# -*- coding: utf-8 -*-
"""
根、次数与 O_∞ 测试
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import DegenerateFormError, NotInRadicalError, WitnessBoundError
from core.fock import State, identity_algebra, make_algebra
from core.modes import ModeEngine
from core.radical import RadicalAnalyzer
from tests.helpers import h, hh


class TestRadicalMembership:
    def test_j1_is_all_of_weight_one(self, analyzer, analyzer_two):
        assert analyzer.j1_basis() == [h(1)]
        assert len(analyzer_two.j1_basis()) == 2

    def test_translated_boson(self, analyzer):
        certificate = analyzer.radical_member(h(2))
        assert certificate.member
        assert certificate.j1 == -h(1)
        assert certificate.w == h(1)

    def test_vacuum_is_not_a_member(self, analyzer):
        certificate = analyzer.radical_member(State.vacuum())
        assert not certificate.member
        assert certificate.witness.weight == 0
        assert certificate.witness.image == State.vacuum()

    def test_conformal_vector_is_not_a_member(self, analyzer):
        certificate = analyzer.radical_member(hh((1, 1), (1, 1)))
        assert not certificate.member
        assert certificate.witness.weight == 1

    def test_zero_state(self, analyzer):
        assert analyzer.radical_member(State()).member

    def test_decompose(self, analyzer, engine):
        v = h(2) + 3 * h(1) + engine.translate_and_scale(hh((1, 2), (1, 1)))
        j1, w = analyzer.radical_decompose(v)
        assert j1.weights() in ([], [1])
        assert j1 + engine.translate_and_scale(w) == v

    def test_decompose_rejects_non_members(self, analyzer):
        with pytest.raises(NotInRadicalError, match="input not in radical"):
            analyzer.radical_decompose(State.vacuum())
        with pytest.raises(NotInRadicalError):
            analyzer.radical_decompose(hh((1, 1), (1, 1)))


class TestDegree:
    @pytest.mark.parametrize('state, expected', [
        (h(1), 1),
        (h(2), 2),
        (h(3), 3),
        (hh((1, 1), (1, 1)), 0),
        (hh((1, 2), (1, 1)), 1),
    ])
    def test_degree_values(self, analyzer, state, expected):
        outcome = analyzer.degree(state)
        assert outcome.degree == expected
        assert analyzer.degree_witness(state) == expected
        n, witness = outcome.mode_witness
        assert n == expected
        assert witness.image

    def test_vacuum_degree(self, analyzer):
        assert analyzer.degree(State.vacuum()).degree == -1
        assert analyzer.degree(State()).degree == -1

    def test_vacuum_part_dropped(self, analyzer):
        outcome = analyzer.degree(h(1) + State.vacuum())
        assert outcome.degree == 1
        assert outcome.dropped_vacuum_part

    def test_structural_witness(self, analyzer, engine):
        outcome = analyzer.degree(h(3))
        j, u = outcome.structural_witness
        assert engine.l_minus_one_power(j, 2) + engine.l_minus_one_power(u, 3) == h(3)

    def test_translation_raises_degree(self, analyzer, engine):
        v = hh((1, 2), (1, 1)) + hh((1, 1), (1, 1), (1, 1))
        base = analyzer.degree(v).degree
        for k in range(1, 3):
            assert analyzer.degree(engine.l_minus_one_power(v, k)).degree == base + k

    def test_witness_bound_too_small(self, analyzer):
        with pytest.raises(WitnessBoundError, match="witness bound too small"):
            analyzer.degree_witness(h(1), witness_weight_bound=0)

    def test_filtration(self, analyzer):
        assert analyzer.filtration_member(h(3), 3)
        assert not analyzer.filtration_member(h(3), 4)
        assert analyzer.filtration_member(h(1), 1)
        with pytest.raises(ValueError):
            analyzer.filtration_member(h(1), 0)


class TestRadicalStructure:
    def test_radical_is_not_graded(self, analyzer, engine):
        square = hh((1, 1), (1, 1))
        v = engine.translate_and_scale(square)
        assert v.component(2) == 2 * square
        assert v.component(3) == hh((1, 2), (1, 1), coeff=2)
        assert analyzer.radical_member(v).member
        assert not analyzer.radical_member(v.component(2)).member
        assert not analyzer.radical_member(v.component(3)).member

    @pytest.mark.parametrize('u', [State(), h(1), h(2), hh((1, 1), (1, 1))])
    @pytest.mark.parametrize('d', [1, 2, 3])
    def test_filtration_nesting(self, analyzer, engine, u, d):
        v = engine.l_minus_one_power(h(1, coeff=Fraction(1, 2)), d - 1) + engine.l_minus_one_power(u, d)
        assert min(v.weights()) >= d
        for e in range(1, d + 1):
            assert analyzer.filtration_member(v, e)

    def test_filtration_stops_at_degree(self, analyzer, engine):
        # deg h(-1)^2 = 0，平移 d 次后次数为 d
        for d in range(1, 4):
            v = engine.l_minus_one_power(hh((1, 1), (1, 1)), d)
            assert analyzer.filtration_member(v, d)
            assert not analyzer.filtration_member(v, d + 1)

    def test_low_components_leave_the_filtration(self, analyzer):
        assert not analyzer.filtration_member(h(3) + h(1), 2)
        assert not analyzer.filtration_member(State.vacuum(), 1)

    def test_translation_solver_is_cached(self, analyzer, engine):
        solver = analyzer.translation_solver(2, 2)
        assert analyzer.translation_solver(2, 2) is solver
        assert solver.matrix.shape == (5, 2)
        assert solver.preimage(engine.l_minus_one_power(h(2), 2)) == h(2)
        assert solver.preimage(hh((1, 1), (1, 1), (1, 1), (1, 1))) is None
        assert analyzer.translation_solver(1, 0).preimage(h(1)) == h(1)


class TestOInfinity:
    def test_member(self, analyzer):
        certificate = analyzer.oinfinity_member(h(1) + h(2))
        assert certificate.member
        assert certificate.w == h(1)

    def test_weight_one_separated_by_momentum(self, analyzer):
        certificate = analyzer.oinfinity_member(h(1))
        assert not certificate.member
        assert certificate.radical.member
        assert certificate.momentum == (Fraction(1),)
        assert certificate.module_scalar == 1

    def test_isotropic_momentum_choice(self):
        algebra = make_algebra(2, [[0, 1], [1, 0]])
        analyzer = RadicalAnalyzer(ModeEngine(algebra), max_weight=2)
        momentum = analyzer.witness_momentum(h(1, index=1))
        assert momentum == (Fraction(0), Fraction(1))
        matrix = analyzer.module_zero_mode_matrix(h(1, index=1), momentum, 0)
        assert matrix.entries[0][0] == 1

    def test_zero_mode_vanishes_on_modules(self, analyzer, engine):
        v = engine.translate_and_scale(hh((1, 2), (1, 1)))
        for momentum in [(0,), (1,), (Fraction(-1, 2),)]:
            for k in range(4):
                assert analyzer.module_zero_mode_matrix(v, momentum, k).is_zero()



class TestCommutant:
    def test_single_boson(self, analyzer_two):
        check = analyzer_two.tensor_factor_dim_check([[1, 0]], 4)
        assert check['success']
        assert check['commutant_dims'] == [1, 1, 2, 3, 5]

    def test_commutant_basis(self, analyzer_two):
        basis_two = analyzer_two.commutant_basis([[1, 0]], 2)
        assert set(basis_two) == {h(2, index=2), hh((2, 1), (2, 1))}
        assert analyzer_two.commutant_basis([[1, 0]], 0) == [State.vacuum()]

    def test_degenerate_subspace(self):
        algebra = make_algebra(2, [[0, 1], [1, 0]])
        analyzer = RadicalAnalyzer(ModeEngine(algebra), max_weight=2)
        with pytest.raises(DegenerateFormError):
            analyzer.commutant_basis([[1, 0]], 1)

    def test_canonical_form(self, analyzer_two, skew_algebra):
        assert analyzer_two.canonical_form_matrix() == [[1, 0], [0, 1]]
        skew = RadicalAnalyzer(ModeEngine(skew_algebra), max_weight=2)
        assert skew.canonical_form_matrix() == [[2, 1], [1, 2]]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=-3, max_value=3).filter(bool),
       st.sampled_from([((1, 1),), ((1, 2),), ((1, 1), (1, 1)), ((1, 3),), ((1, 2), (1, 1))]))
def test_radical_round_trip(scale, mono):
    analyzer = _shared_analyzer()
    engine = analyzer.engine
    v = scale * h(1) + engine.translate_and_scale(State({mono: 1}))
    certificate = analyzer.radical_member(v)
    assert certificate.member
    assert certificate.j1 + engine.translate_and_scale(certificate.w) == v
    j1, w = analyzer.radical_decompose(v)
    assert j1 + engine.translate_and_scale(w) == v


_ANALYZERS = {}


def _shared_analyzer() -> RadicalAnalyzer:
    if 'rank1' not in _ANALYZERS:
        _ANALYZERS['rank1'] = RadicalAnalyzer(ModeEngine(identity_algebra(1)), max_weight=4)
    return _ANALYZERS['rank1']


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([((1, 1),), ((1, 2),), ((1, 1), (1, 1)), ((1, 3),), ((1, 2), (1, 1))]),
       st.integers(min_value=-3, max_value=3))
def test_oinfinity_inside_radical(mono, scale):
    analyzer = _shared_analyzer()
    engine = analyzer.engine
    w = State({mono: 1}) + scale * h(1)
    v = engine.translate_and_scale(w)
    certificate = analyzer.oinfinity_member(v)
    assert certificate.member
    assert engine.translate_and_scale(certificate.w) == v
    assert analyzer.radical_member(v).member
