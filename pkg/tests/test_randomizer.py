# -*- coding: utf-8 -*-
"""
随机源测试
"""

from hypothesis import given, settings
from hypothesis import strategies as st

from core.fock import identity_algebra
from utils.randomizer import SeededRandom, random_state, random_states, random_vector

RANK_TWO = identity_algebra(2)


def test_same_seed_same_stream():
    a, b = SeededRandom(42), SeededRandom(42)
    assert [a.randint(0, 10 ** 6) for _ in range(5)] == [b.randint(0, 10 ** 6) for _ in range(5)]


def test_children_are_independent_of_parent_use():
    parent = SeededRandom(7)
    first = parent.child('modes').randint(0, 10 ** 9)
    parent.randint(0, 10)
    assert parent.child('modes').randint(0, 10 ** 9) == first
    assert parent.child('modes').label == 'modes'
    assert parent.child('modes').child('x').label == 'modes/x'


def test_labels_change_the_stream():
    assert SeededRandom.derive_seed(1, 'a') != SeededRandom.derive_seed(1, 'b')
    assert SeededRandom.derive_seed(1, 'a') != SeededRandom.derive_seed(2, 'a')
    assert 0 <= SeededRandom.derive_seed(1, '') < 2 ** 64


def test_homogeneous_states():
    rng = SeededRandom(3)
    for _ in range(20):
        assert random_state(RANK_TWO, rng, max_weight=4, weight=3).weights() == [3]


def test_random_vector_is_nonzero():
    rng = SeededRandom(5)
    assert all(any(random_vector(3, rng)) for _ in range(20))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 64 - 1))
def test_states_are_nonzero_and_bounded(seed):
    rng = SeededRandom(seed)
    assert rng.rational() != 0
    for state in random_states(RANK_TWO, rng, 3, max_weight=4, min_weight=1):
        assert state
        assert all(1 <= w <= 4 for w in state.weights())
