#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
态表达式解析器
负责把 "1/2*h1(-1)h1(-1)|0> + h1(-2)|0>" 形式的文本解析为 State，并按规范顺序打印
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from core.errors import AlgebraError, StateParseError
from core.fock import BosonAlgebra, Monomial, State, make_monomial

# 词法：真空、整数、名字、单字符运算符
TOKEN_PATTERN = re.compile(
    r'(?P<vacuum>\|0>)|(?P<number>[0-9]+)|(?P<name>deg|[hLo])|(?P<op>[()+\-*/])'
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class StateLiteral:
    state: State


@dataclass(frozen=True)
class VirasoroApply:
    n: int
    operand: "Expression"


@dataclass(frozen=True)
class ZeroModeApply:
    state: State
    operand: "Expression"


@dataclass(frozen=True)
class DegreeQuery:
    state: State


Expression = Union[StateLiteral, VirasoroApply, ZeroModeApply, DegreeQuery]


def tokenize(text: str) -> List[Token]:
    """
    词法分析

    Args:
        text: 表达式文本，空白不敏感

    Returns:
        List[Token]: 以 end 记号结尾的记号列表
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise StateParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        value = match.group(kind)
        tokens.append(Token(kind, value, pos))
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class StateParser:
    """态表达式的递归下降解析器"""

    def __init__(self, algebra: BosonAlgebra):
        self.algebra = algebra
        self.tokens: List[Token] = []
        self.index = 0

    # ------------------------------------------------------------------
    # 记号流
    # ------------------------------------------------------------------

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _at(self, text: str) -> bool:
        token = self._peek()
        return token.kind != 'end' and token.text == text

    def _expect(self, text: str) -> Token:
        token = self._peek()
        if token.text != text or token.kind == 'end':
            found = repr(token.text) if token.kind != 'end' else 'end of input'
            raise StateParseError(f"expected {text!r}, found {found}", token.position)
        return self._advance()

    def _number(self, what: str) -> Token:
        token = self._peek()
        if token.kind != 'number':
            raise StateParseError(f"expected {what}", token.position)
        return self._advance()

    def _finish(self) -> None:
        token = self._peek()
        if token.kind != 'end':
            raise StateParseError(f"unexpected {token.text!r}", token.position)

    def _reset(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.index = 0

    # ------------------------------------------------------------------
    # 入口
    # ------------------------------------------------------------------

    def parse_state(self, text: str) -> State:
        """
        解析单个态

        Args:
            text: 态文本

        Returns:
            State: 规范态
        """
        self._reset(text)
        state = self._state()
        self._finish()
        return state

    def parse_expression(self, text: str) -> Expression:
        """
        解析带 L(n)、o(...)、deg(...) 包装的表达式

        Args:
            text: 表达式文本

        Returns:
            Expression: 语法树
        """
        self._reset(text)
        expression = self._expression()
        self._finish()
        return expression

    # ------------------------------------------------------------------
    # 文法
    # ------------------------------------------------------------------

    def _expression(self, outermost: bool = True) -> Expression:
        token = self._peek()
        if token.kind == 'name' and token.text == 'L':
            self._advance()
            self._expect('(')
            n = self._signed_int()
            self._expect(')')
            return VirasoroApply(n, self._expression(outermost=False))
        if token.kind == 'name' and token.text == 'o':
            self._advance()
            self._expect('(')
            state = self._state()
            self._expect(')')
            return ZeroModeApply(state, self._expression(outermost=False))
        if token.kind == 'name' and token.text == 'deg':
            if not outermost:
                raise StateParseError("deg(...) must be the outermost wrapper", token.position)
            self._advance()
            self._expect('(')
            state = self._state()
            self._expect(')')
            return DegreeQuery(state)
        return StateLiteral(self._state())

    def _signed_int(self) -> int:
        sign = 1
        if self._at('-'):
            self._advance()
            sign = -1
        return sign * int(self._number("integer mode index").text)

    def _state(self) -> State:
        terms: Dict[Monomial, Fraction] = {}
        sign = 1
        if self._at('-') or self._at('+'):
            sign = -1 if self._advance().text == '-' else 1

        while True:
            term = self._term()
            if term is not None:
                mono, coeff = term
                terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
            if self._at('+') or self._at('-'):
                sign = -1 if self._advance().text == '-' else 1
                continue
            break
        return State(terms)

    def _term(self) -> Optional[Tuple[Monomial, Fraction]]:
        coeff = Fraction(1)
        explicit = self._peek().kind == 'number'
        if explicit:
            coeff = self._rational()
            if self._at('*'):
                self._advance()
            elif coeff == 0 and not self._starts_monomial():
                return None

        factors = []
        while True:
            token = self._peek()
            if token.kind == 'vacuum':
                self._advance()
                return make_monomial(factors), coeff
            if token.kind == 'name' and token.text == 'h':
                factors.append(self._atom())
                if self._at('*'):
                    self._advance()
                continue
            raise StateParseError("expected a creation atom or '|0>'", token.position)

    def _starts_monomial(self) -> bool:
        token = self._peek()
        return token.kind == 'vacuum' or (token.kind == 'name' and token.text == 'h')

    def _rational(self) -> Fraction:
        start = self._advance()
        numerator = int(start.text)
        if not self._at('/'):
            return Fraction(numerator)
        self._advance()
        token = self._peek()
        if token.kind != 'number' or int(token.text) == 0:
            raise StateParseError(f"malformed rational starting {start.text!r}", start.position)
        self._advance()
        return Fraction(numerator, int(token.text))

    def _atom(self) -> Tuple[int, int]:
        self._advance()
        index_token = self._number("boson index after 'h'")
        index = int(index_token.text)
        try:
            self.algebra.check_index(index)
        except AlgebraError as exc:
            raise StateParseError(str(exc), index_token.position) from exc

        self._expect('(')
        sign_token = self._peek()
        if not self._at('-'):
            raise StateParseError("creation level must be written as (-n) with n >= 1",
                                  sign_token.position)
        self._advance()
        level_token = self._number("creation level")
        level = int(level_token.text)
        if level <= 0:
            raise StateParseError(f"creation level must be positive, got {level}",
                                  level_token.position)
        self._expect(')')
        return index, level


def parse_state(text: str, algebra: BosonAlgebra) -> State:
    """文本 → 规范态"""
    return StateParser(algebra).parse_state(text)


def parse_expression(text: str, algebra: BosonAlgebra) -> Expression:
    return StateParser(algebra).parse_expression(text)


def _monomial_text(mono: Monomial) -> str:
    return "".join(f"h{index}(-{level})" for index, level in mono) + "|0>"


def format_state(state: State) -> str:
    """
    规范顺序打印

    Args:
        state: 任意态

    Returns:
        str: 零态为 "0"；首项系数 1 省略，其余以 "p/q*" 前缀；后续项以 " + " / " - " 连接
    """
    if not state:
        return "0"
    parts = []
    for position, (mono, coeff) in enumerate(state.items()):
        body = _monomial_text(mono)
        if position == 0:
            parts.append(body if coeff == 1 else f"{coeff}*{body}")
            continue
        magnitude = abs(coeff)
        rendered = body if magnitude == 1 else f"{magnitude}*{body}"
        parts.append(f"{'-' if coeff < 0 else '+'} {rendered}")
    return " ".join(parts)
