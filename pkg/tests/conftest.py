#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试公共夹具
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.fock import identity_algebra, make_algebra  # noqa: E402
from core.modes import ModeEngine  # noqa: E402
from core.radical import RadicalAnalyzer  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: 默认配置下的整套运行时间检验')


@pytest.fixture(scope='module')
def rank_one():
    return identity_algebra(1)


@pytest.fixture(scope='module')
def rank_two():
    return identity_algebra(2)


@pytest.fixture(scope='module')
def skew_algebra():
    return make_algebra(2, [[2, 1], [1, 2]])


@pytest.fixture(scope='module')
def engine(rank_one):
    return ModeEngine(rank_one)


@pytest.fixture(scope='module')
def engine_two(rank_two):
    return ModeEngine(rank_two)


@pytest.fixture(scope='module')
def analyzer(engine):
    return RadicalAnalyzer(engine, max_weight=5)


@pytest.fixture(scope='module')
def analyzer_two(engine_two):
    return RadicalAnalyzer(engine_two, max_weight=4)
