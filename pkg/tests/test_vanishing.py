# -*- coding: utf-8 -*-
"""
模消失检验测试
"""

import pytest
from sympy import npartitions

from core.fock import State
from core.vanishing import (
    deterministic_kernel, quasi_primaries, quasi_primary_zero_mode_kernel,
    semi_primary_radical_kernel, top_mode_kernel, translation_commutes,
)
from tests.helpers import h, hh


@pytest.mark.parametrize('n', [1, 2, 3])
def test_top_mode_is_faithful(analyzer, n):
    assert top_mode_kernel(analyzer, n) == []


def test_semi_primary_kernel_is_weight_one(analyzer):
    assert semi_primary_radical_kernel(analyzer, 1) == [h(1)]
    assert semi_primary_radical_kernel(analyzer, 2) == []
    assert semi_primary_radical_kernel(analyzer, 3) == []


@pytest.mark.parametrize('n', [2, 3])
def test_quasi_primary_zero_mode(analyzer, n):
    assert quasi_primary_zero_mode_kernel(analyzer, n) == []


@pytest.mark.parametrize('n', [1, 2, 3])
def test_deterministic_kernel(analyzer, n):
    assert deterministic_kernel(analyzer, n) == []


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_quasi_primary_count(engine, n):
    states = quasi_primaries(engine, n)
    assert len(states) == npartitions(n) - npartitions(n - 1)
    assert all(engine.virasoro(1, v).is_zero() for v in states)


def test_weight_two_quasi_primary_is_conformal(engine):
    assert quasi_primaries(engine, 2) == [hh((1, 1), (1, 1))]


def test_translation_commutes(analyzer):
    assert translation_commutes(analyzer, State.vacuum())
    assert not translation_commutes(analyzer, h(1))
