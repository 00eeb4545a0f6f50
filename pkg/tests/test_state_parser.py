# -*- coding: utf-8 -*-
"""
态解析与打印测试
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import StateParseError
from core.fock import State, identity_algebra
from tests.helpers import h, hh
from utils.randomizer import SeededRandom, random_state
from utils.state_parser import (
    DegreeQuery, StateLiteral, VirasoroApply, ZeroModeApply,
    format_state, parse_expression, parse_state, tokenize,
)

RANK_ONE = identity_algebra(1)
RANK_TWO = identity_algebra(2)


class TestParse:
    def test_simple_states(self):
        assert parse_state("|0>", RANK_ONE) == State.vacuum()
        assert parse_state("h1(-2)|0>", RANK_ONE) == h(2)
        assert parse_state("0", RANK_ONE) == State()

    def test_coefficients(self):
        state = parse_state("1/2*h1(-1)h1(-1)|0> + h1(-2)|0>", RANK_ONE)
        assert state == h(2) + hh((1, 1), (1, 1), coeff=Fraction(1, 2))
        assert parse_state("-3 h1(-1)|0>", RANK_ONE) == h(1, coeff=-3)

    def test_factors_are_sorted(self):
        assert parse_state("h1(-1)*h1(-2)|0>", RANK_ONE) == hh((1, 2), (1, 1))
        assert parse_state("h2(-1)h1(-1)|0>", RANK_TWO) == hh((1, 1), (2, 1))

    def test_like_terms_collect(self):
        assert parse_state("h1(-1)|0> - h1(-1)|0>", RANK_ONE) == State()
        assert parse_state("h1(-1)|0> + 2*h1(-1)|0>", RANK_ONE) == h(1, coeff=3)

    def test_whitespace_is_ignored(self):
        assert parse_state("  h1( - 2 ) |0>  ", RANK_ONE) == h(2)


class TestParseErrors:
    @pytest.mark.parametrize('text, message', [
        ("h3(-1)|0>", "boson index 3 exceeds rank 2 at position 1"),
        ("h1(1)|0>", r"creation level must be written as \(-n\) with n >= 1 at position 3"),
        ("h1(-0)|0>", "creation level must be positive, got 0 at position 4"),
        ("1/0*h1(-1)|0>", "malformed rational starting '1' at position 0"),
        ("h1(-1)", r"expected a creation atom or '\|0>' at position 6"),
        ("h1(-1)|0> $", "unexpected character '\\$' at position 10"),
        ("|0> |0>", "unexpected '\\|0>' at position 4"),
        ("h1(-\u0663)|0>", "unexpected character '\u0663' at position 4"),
        ("h1(-1)\uff11|0>", "unexpected character '\uff11' at position 6"),
    ])
    def test_error_messages(self, text, message):
        with pytest.raises(StateParseError, match=message):
            parse_state(text, RANK_TWO)

    def test_error_position_attribute(self):
        with pytest.raises(StateParseError) as info:
            parse_state("h1(-1)h9(-1)|0>", RANK_TWO)
        assert info.value.position == 7

    def test_deg_must_be_outermost(self):
        with pytest.raises(StateParseError, match="outermost"):
            parse_expression("L(1) deg(|0>)", RANK_ONE)


class TestExpressions:
    def test_plain_state(self):
        assert parse_expression("h1(-1)|0>", RANK_ONE) == StateLiteral(h(1))

    def test_nested_wrappers(self):
        tree = parse_expression("L(-1) o(h1(-1)|0>) |0>", RANK_ONE)
        assert tree == VirasoroApply(-1, ZeroModeApply(h(1), StateLiteral(State.vacuum())))

    def test_degree_query(self):
        assert parse_expression("deg(h1(-3)|0>)", RANK_ONE) == DegreeQuery(h(3))

    def test_tokens(self):
        kinds = [token.kind for token in tokenize("L(2) |0>")]
        assert kinds == ['name', 'op', 'number', 'op', 'vacuum', 'end']


class TestFormat:
    def test_canonical_output(self):
        state = hh((1, 1), (1, 1), coeff=Fraction(1, 2)) + h(2)
        assert format_state(state) == "h1(-2)|0> + 1/2*h1(-1)h1(-1)|0>"

    def test_signs(self):
        assert format_state(-h(1)) == "-1*h1(-1)|0>"
        assert format_state(h(2) - h(1)) == "-1*h1(-1)|0> + h1(-2)|0>"
        assert format_state(h(1) - 2 * h(2)) == "h1(-1)|0> - 2*h1(-2)|0>"
        assert format_state(State()) == "0"
        assert format_state(State.vacuum()) == "|0>"


@settings(max_examples=500, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32), st.sampled_from([1, 2]))
def test_format_then_parse(seed, rank):
    algebra = RANK_ONE if rank == 1 else RANK_TWO
    state = random_state(algebra, SeededRandom(seed), max_weight=6)
    assert parse_state(format_state(state), algebra) == state
