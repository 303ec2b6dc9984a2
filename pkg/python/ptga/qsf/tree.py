# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Tuple, Union

from ..clockalg import ClockValuation
from ..parser.grammar import ModelSource, TokenStream, TokenType, expect_name
from ..utils import UsageError, format_number, parse_number

MIN_OP = 'min'
MAX_OP = 'max'
CONVEX_OP = 'conv'
OPS = (MIN_OP, MAX_OP, CONVEX_OP)


@dataclass(frozen=True)
class Const(object):
    """The constant function `e`."""
    e: Fraction


@dataclass(frozen=True)
class Lin(object):
    """`e - ν(clock)`."""
    e: Fraction
    clock: str


@dataclass(frozen=True)
class Min(object):
    children: Tuple[Qsf, ...]


@dataclass(frozen=True)
class Max(object):
    children: Tuple[Qsf, ...]


@dataclass(frozen=True)
class Convex(object):
    """`sum(weights[k] * children[k])`; the weights are positive and sum
    to 1."""
    weights: Tuple[Fraction, ...]
    children: Tuple[Qsf, ...]


SimpleFn = Union[Const, Lin]
Qsf = Union[Const, Lin, Min, Max, Convex]


def _checkChildren(children):
    if not children:
        raise UsageError('a combination needs at least one child')


def combine(op, children, weights=None) -> Qsf:
    """
    A new inner node over `children`. `op` is `min`, `max` or `conv`; a
    convex combination takes one positive weight per child, summing to
    exactly 1.
    """
    children = tuple(children)
    _checkChildren(children)
    if op == MIN_OP:
        return Min(children)
    if op == MAX_OP:
        return Max(children)
    if op != CONVEX_OP:
        raise UsageError(f'unknown combination `{op}`')
    if weights is None:
        raise UsageError('a convex combination needs weights')
    weights = tuple(parse_number(w) for w in weights)
    if len(weights) != len(children):
        raise UsageError(f'{len(weights)} weights for {len(children)} '
                         'children')
    if any(w <= 0 for w in weights):
        raise UsageError('convex weights must be positive')
    if sum(weights) != 1:
        raise UsageError(f'convex weights sum to {format_number(sum(weights))}')
    return Convex(weights, children)


@singledispatch
def eval_qsf(f, nu: ClockValuation) -> Fraction:
    """Evaluate `f` at `nu` exactly."""
    raise UsageError(f'not a quasi-simple function: {f!r}')


@eval_qsf.register
def _(f: Const, nu):
    return f.e


@eval_qsf.register
def _(f: Lin, nu):
    return f.e - nu[f.clock]


@eval_qsf.register
def _(f: Min, nu):
    return min(eval_qsf(c, nu) for c in f.children)


@eval_qsf.register
def _(f: Max, nu):
    return max(eval_qsf(c, nu) for c in f.children)


@eval_qsf.register
def _(f: Convex, nu):
    return sum((w * eval_qsf(c, nu) for w, c in zip(f.weights, f.children)),
               Fraction(0))


def _mapLeaves(f: Qsf, leaf) -> Qsf:
    if isinstance(f, (Const, Lin)):
        return leaf(f)
    children = tuple(_mapLeaves(c, leaf) for c in f.children)
    if isinstance(f, Convex):
        return Convex(f.weights, children)
    return type(f)(children)


def elapse_transform(f: Qsf, clock, i) -> Qsf:
    """
    The function `ν ↦ (i - ν(clock)) + f(ν + (i - ν(clock)))`, defined
    where `ν(clock) <= i`: let time pass until `clock` reaches `i`, paying
    the delay. Constant leaves `e` become `(e + i) - ν(clock)`; the other
    leaves are unchanged because the delay cancels.
    """
    i = Fraction(i)

    def leaf(f):
        return Lin(f.e + i, clock) if isinstance(f, Const) else f

    return _mapLeaves(f, leaf)


def reset_transform(f: Qsf, clocks) -> Qsf:
    """The function `ν ↦ f(ν_C)` for the clock set `clocks`."""
    clocks = frozenset(clocks)

    def leaf(f):
        return Const(f.e) if isinstance(f, Lin) and f.clock in clocks else f

    return _mapLeaves(f, leaf)


def tree_height(f: Qsf) -> int:
    if isinstance(f, (Const, Lin)):
        return 0
    return 1 + max(tree_height(c) for c in f.children)


def to_prefix(f: Qsf) -> str:
    """Prefix text such as `min(c:1/2, lin(1,x))`."""
    if isinstance(f, Const):
        return f'c:{format_number(f.e)}'
    if isinstance(f, Lin):
        return f'lin({format_number(f.e)},{f.clock})'
    if isinstance(f, Convex):
        inner = ', '.join(f'{format_number(w)}:{to_prefix(c)}'
                          for w, c in zip(f.weights, f.children))
        return f'{CONVEX_OP}({inner})'
    op = MIN_OP if isinstance(f, Min) else MAX_OP
    return f'{op}(' + ', '.join(to_prefix(c) for c in f.children) + ')'


def _parseNumber(stream) -> Fraction:
    token = stream.expect(TokenType.NUMBER)
    try:
        return parse_number(token.text)
    except UsageError as error:
        raise stream.make_error(str(error), token) from None


def _parseTree(stream) -> Qsf:
    if stream.accept('c'):
        stream.expect(TokenType.COLON)
        return Const(_parseNumber(stream))
    if stream.accept('lin'):
        stream.expect(TokenType.LEFT_PAREN)
        e = _parseNumber(stream)
        stream.expect(TokenType.COMMA)
        clock = expect_name(stream, 'clock').text
        stream.expect(TokenType.RIGHT_PAREN)
        return Lin(e, clock)
    token = stream.expect(set(OPS))
    stream.expect(TokenType.LEFT_PAREN)
    weights, children = [], []
    while True:
        if token.text == CONVEX_OP:
            weights.append(_parseNumber(stream))
            stream.expect(TokenType.COLON)
        children.append(_parseTree(stream))
        if not stream.accept(TokenType.COMMA):
            break
    stream.expect(TokenType.RIGHT_PAREN)
    try:
        return combine(token.text, children,
                       weights if token.text == CONVEX_OP else None)
    except UsageError as error:
        raise stream.make_error(str(error), token) from None


def parse_qsf(text) -> Qsf:
    """Parse the prefix form written by :func:`to_prefix`."""
    stream = TokenStream(ModelSource(text))
    f = _parseTree(stream)
    if not stream.finished_parsing:
        raise stream.make_error('trailing input after the tree')
    return f
