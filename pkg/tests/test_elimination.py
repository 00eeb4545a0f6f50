# -*- coding: utf-8 -*-
"""
精确消元测试
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core import elimination
from core.errors import DegenerateFormError, DimensionMismatchError

F = Fraction


def test_rank_of_dependent_rows():
    assert elimination.rank([[1, 2], [2, 4]], 2) == 1
    assert elimination.rank([], 3) == 0


def test_kernel_of_rank_one_matrix():
    assert elimination.kernel_basis([[1, 2], [2, 4]], 2) == [[F(-2), F(1)]]


def test_kernel_without_rows_is_everything():
    assert elimination.kernel_basis([], 2) == [[F(1), F(0)], [F(0), F(1)]]


def test_solve_with_fractions():
    rows = [[F(1, 2), F(1)], [F(0), F(3)]]
    solution = elimination.solve(rows, 2, [F(1), F(6)])
    assert solution == [F(-2), F(2)]


def test_inconsistent_system():
    assert elimination.solve([[1, 1], [2, 2]], 2, [1, 3]) is None


def test_target_length_checked():
    with pytest.raises(DimensionMismatchError):
        elimination.solve([[1, 0]], 2, [1, 2])


def test_invert():
    inverse = elimination.invert([[F(2), F(1)], [F(1), F(1)]])
    assert inverse == [[F(1), F(-1)], [F(-1), F(2)]]


def test_invert_singular():
    with pytest.raises(DegenerateFormError):
        elimination.invert([[1, 2], [2, 4]])


def test_matrix_product():
    product = elimination.matrix_product([[1, 2]], [[F(1)], [F(1, 2)]], 2, 1)
    assert product == [[F(2)]]


entries = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw):
    nrows = draw(st.integers(min_value=0, max_value=5))
    ncols = draw(st.integers(min_value=1, max_value=5))
    rows = [[F(draw(entries), draw(st.integers(min_value=1, max_value=3))) for _ in range(ncols)]
            for _ in range(nrows)]
    return rows, ncols


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(matrix):
    rows, ncols = matrix
    kernel = elimination.kernel_basis(rows, ncols)
    assert elimination.rank(rows, ncols) + len(kernel) == ncols
    for vector in kernel:
        assert elimination.matrix_vector(rows, vector) == [F(0)] * len(rows)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_solve_recovers_image(matrix, data):
    rows, ncols = matrix
    x = [F(data.draw(entries)) for _ in range(ncols)]
    target = elimination.matrix_vector(rows, x)
    solution = elimination.solve(rows, ncols, target)
    assert solution is not None
    assert elimination.matrix_vector(rows, solution) == target


def test_invert_needs_row_swap():
    assert elimination.invert([[0, 1], [1, 0]]) == [[F(0), F(1)], [F(1), F(0)]]
    assert elimination.invert([]) == []


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(min_value=-4, max_value=4), min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_invert_agrees_with_rank(rows):
    if elimination.rank(rows, 4) < 4:
        with pytest.raises(DegenerateFormError):
            elimination.invert(rows)
        return
    inverse = elimination.invert(rows)
    identity = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    assert elimination.matrix_product(rows, inverse, 4, 4) == identity
    assert elimination.matrix_product(inverse, rows, 4, 4) == identity
