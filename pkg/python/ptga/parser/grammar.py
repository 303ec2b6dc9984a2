# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Dict, Iterator, List, Optional, Union

from ..clockalg import Atom, ClockConstraint, ClockSpace
from ..model import (MAX, MIN, Branch, Edge, InitialState, Location, Ptga)
from ..utils import ParseError, UsageError, parse_number

logger = logging.getLogger(__name__)


class TokenType(enum.Enum):
    WHITESPACE = 'whitespace'
    COMMENT = 'comment'
    NUMBER = 'number'
    IDENTIFIER = 'identifier'
    RELATION = 'relation'
    ARROW = '->'
    AND = '&'
    MINUS = '-'
    SEMICOLON = ';'
    COMMA = ','
    COLON = ':'
    EQUALS_SIGN = '='
    LEFT_BRACE = '{'
    RIGHT_BRACE = '}'
    LEFT_PAREN = '('
    RIGHT_PAREN = ')'
    END = 'end of input'


KEYWORDS = frozenset({
    'model', 'clocks', 'bound', 'actions', 'location', 'inv', 'edge', 'min',
    'max', 'from', 'guard', 'reset', 'target', 'init', 'true'
})

# Order matters: longer operators first.
_TOKEN_PATTERNS = (
    (TokenType.WHITESPACE, r'\s+'),
    (TokenType.COMMENT, r'//[^\n]*'),
    (TokenType.NUMBER, r'\d+(?:\.\d+)?(?:/\d+)?'),
    (TokenType.IDENTIFIER, r"[A-Za-z_][A-Za-z0-9_']*"),
    (TokenType.ARROW, r'->|→'),
    (TokenType.RELATION, r'<=|>=|==|≤|≥|<|>'),
    (TokenType.AND, r'&&|&|∧'),
    (TokenType.MINUS, r'-'),
    (TokenType.SEMICOLON, r';'),
    (TokenType.COMMA, r','),
    (TokenType.COLON, r':'),
    # `=` is read as a relation inside constraints.
    (TokenType.EQUALS_SIGN, r'='),
    (TokenType.LEFT_BRACE, r'\{'),
    (TokenType.RIGHT_BRACE, r'\}'),
    (TokenType.LEFT_PAREN, r'\('),
    (TokenType.RIGHT_PAREN, r'\)'),
)

_LEXER = re.compile('|'.join(
    f'(?P<{kind.name}>{pattern})' for kind, pattern in _TOKEN_PATTERNS))

_IGNORE = {TokenType.WHITESPACE, TokenType.COMMENT}

_RELATION_ALIASES = {'≤': '<=', '≥': '>=', '==': '='}


@dataclass(frozen=True)
class Token(object):
    token_type: TokenType
    text: str
    row: int
    column: int


@dataclass(frozen=True)
class ModelSource(object):
    """A model document and where it came from (a path, or `None`)."""
    text: str
    origin: Optional[str] = None


def _sourceLine(code, row):
    lines = code.split('\n')
    return lines[row - 1] if 0 < row <= len(lines) else ''


def lex(code: str, origin=None) -> Iterator[Token]:
    """Split `code` into tokens with 1-based row and column."""
    row, lineStart, position = 1, 0, 0
    while position < len(code):
        match = _LEXER.match(code, position)
        column = position - lineStart + 1
        if match is None:
            raise ParseError('unexpected character', row, column,
                             code[position], _sourceLine(code, row), origin)
        kind = TokenType[match.lastgroup]
        text = match.group()
        yield Token(kind, text, row, column)
        newlines = text.count('\n')
        if newlines:
            row += newlines
            lineStart = position + text.rindex('\n') + 1
        position = match.end()
    yield Token(TokenType.END, '', row, position - lineStart + 1)


Expected = Union[TokenType, str, AbstractSet[Union[TokenType, str]]]


class TokenStream:
    """One-token lookahead over the significant tokens of a document."""

    def __init__(self, source: ModelSource) -> None:
        self.source = source
        self.iterator = lex(source.text, source.origin)
        self._current = self._forward()

    def _forward(self) -> Token:
        token = next(self.iterator)
        while token.token_type in _IGNORE:
            token = next(self.iterator)
        return token

    @property
    def current_token(self) -> Token:
        return self._current

    @property
    def finished_parsing(self) -> bool:
        return self._current.token_type is TokenType.END

    def consume(self) -> Token:
        token = self._current
        if token.token_type is not TokenType.END:
            self._current = self._forward()
        return token

    def _matches(self, expected: Expected) -> bool:
        token = self._current
        if isinstance(expected, TokenType):
            return token.token_type is expected
        if isinstance(expected, str):
            return token.token_type is TokenType.IDENTIFIER and \
                token.text == expected
        return any(self._matches(e) for e in expected)

    def accept(self, expected: Expected) -> Optional[Token]:
        if self._matches(expected):
            return self.consume()
        return None

    def check(self, expected: Expected) -> bool:
        return self._matches(expected)

    def expect(self, expected: Expected) -> Token:
        token = self.accept(expected)
        if token is None:
            raise self.make_error(f'expected {_describe(expected)}')
        return token

    def make_error(self, message: str, token: Token = None) -> ParseError:
        token = self._current if token is None else token
        text = token.text or token.token_type.value
        return ParseError(message, token.row, token.column, text,
                          _sourceLine(self.source.text, token.row),
                          self.source.origin)


def _describe(expected: Expected) -> str:
    if isinstance(expected, TokenType):
        return expected.value
    if isinstance(expected, str):
        return f'`{expected}`'
    return ' or '.join(sorted(_describe(e) for e in expected))


def expect_name(stream: TokenStream, what: str) -> Token:
    """Consume an identifier that is not a keyword, naming `what` in the
    error otherwise."""
    token = stream.current_token
    if token.token_type is not TokenType.IDENTIFIER or token.text in KEYWORDS:
        raise stream.make_error(f'expected {what} name')
    return stream.consume()


def _parseInteger(stream: TokenStream, negative=False) -> int:
    token = stream.expect(TokenType.NUMBER)
    if not token.text.isdigit():
        raise stream.make_error('constraint constants must be integers', token)
    value = int(token.text)
    return -value if negative else value


def _parseAtom(stream: TokenStream) -> Atom:
    left = expect_name(stream, 'clock').text
    right = None
    if stream.accept(TokenType.MINUS):
        right = expect_name(stream, 'clock').text
    if stream.check(TokenType.EQUALS_SIGN):
        relation = stream.consume().text
    else:
        relation = stream.expect(TokenType.RELATION).text
    relation = _RELATION_ALIASES.get(relation, relation)
    negative = bool(stream.accept(TokenType.MINUS))
    if negative and right is None:
        raise stream.make_error('negative constants need a clock difference')
    return Atom(left, right, relation, _parseInteger(stream, negative))


def parse_constraint_tokens(stream: TokenStream) -> ClockConstraint:
    if stream.accept('true'):
        return ClockConstraint.true()
    atoms = [_parseAtom(stream)]
    while stream.accept(TokenType.AND):
        atoms.append(_parseAtom(stream))
    return ClockConstraint(tuple(atoms))


def _parseProbability(stream: TokenStream) -> Fraction:
    token = stream.expect(TokenType.NUMBER)
    try:
        return parse_number(token.text)
    except UsageError as error:
        raise stream.make_error(str(error), token) from None


class _Document(object):
    """Declarations collected while parsing, assembled into a `Ptga`."""

    def __init__(self):
        self.name = None
        self.clocks: List[str] = []
        self.bound: Optional[int] = None
        self.actions: Dict[str, Optional[List[str]]] = {MIN: None, MAX: None}
        self.locations: List[Location] = []
        self.edges: List[Edge] = []
        self.targets: List[str] = []
        self.initial: Optional[InitialState] = None


def _parseClocks(stream, doc):
    names = [expect_name(stream, 'clock')]
    while not stream.check(TokenType.SEMICOLON):
        names.append(expect_name(stream, 'clock'))
    for token in names:
        if token.text in doc.clocks:
            raise stream.make_error(f'duplicate clock `{token.text}`', token)
        doc.clocks.append(token.text)
    stream.expect(TokenType.SEMICOLON)


def _parseBound(stream, doc):
    token = stream.current_token
    if doc.bound is not None:
        raise stream.make_error('duplicate `bound` declaration')
    value = _parseInteger(stream)
    if value < 1:
        raise stream.make_error('clock bound must be a positive integer',
                                token)
    doc.bound = value
    stream.expect(TokenType.SEMICOLON)


def _parsePlayer(stream) -> str:
    return stream.expect({'min', 'max'}).text


def _parseActions(stream, doc):
    player = _parsePlayer(stream)
    declared = doc.actions[player]
    if declared is None:
        declared = doc.actions[player] = []
    while not stream.check(TokenType.SEMICOLON):
        token = expect_name(stream, 'action')
        if token.text in declared:
            raise stream.make_error(
                f'duplicate {player} action `{token.text}`', token)
        declared.append(token.text)
    stream.expect(TokenType.SEMICOLON)


def _parseLocation(stream, doc):
    token = expect_name(stream, 'location')
    if any(loc.name == token.text for loc in doc.locations):
        raise stream.make_error(f'duplicate location `{token.text}`', token)
    invariant = ClockConstraint.true()
    if stream.accept(TokenType.LEFT_BRACE):
        if stream.accept('inv'):
            invariant = parse_constraint_tokens(stream)
        stream.expect(TokenType.RIGHT_BRACE)
    else:
        stream.expect(TokenType.SEMICOLON)
    doc.locations.append(Location(token.text, invariant))


def _parseBranch(stream) -> Branch:
    probability = _parseProbability(stream)
    resets = []
    if stream.accept('reset'):
        while not stream.check(TokenType.ARROW):
            resets.append(expect_name(stream, 'clock').text)
    stream.expect(TokenType.ARROW)
    target = expect_name(stream, 'location').text
    return Branch(probability, tuple(resets), target)


def _parseEdge(stream, doc):
    player = _parsePlayer(stream)
    action = expect_name(stream, 'action')
    stream.expect('from')
    source = expect_name(stream, 'location').text
    if any(e.source == source and e.action == action.text for e in doc.edges):
        raise stream.make_error(
            f'duplicate edge for action `{action.text}` from `{source}`',
            action)
    guard = ClockConstraint.true()
    if stream.accept('guard'):
        guard = parse_constraint_tokens(stream)
    stream.expect(TokenType.LEFT_BRACE)
    branches = [_parseBranch(stream)]
    while stream.accept(TokenType.SEMICOLON):
        if stream.check(TokenType.RIGHT_BRACE):
            break
        branches.append(_parseBranch(stream))
    stream.expect(TokenType.RIGHT_BRACE)
    doc.edges.append(Edge(player, action.text, source, guard,
                          tuple(branches)))


def _parseTargets(stream, doc):
    names = [expect_name(stream, 'location')]
    while not stream.check(TokenType.SEMICOLON):
        names.append(expect_name(stream, 'location'))
    for token in names:
        if token.text not in doc.targets:
            doc.targets.append(token.text)
    stream.expect(TokenType.SEMICOLON)


def _parseInit(stream, doc):
    keyword = stream.current_token
    if doc.initial is not None:
        raise stream.make_error('duplicate `init` declaration', keyword)
    location = expect_name(stream, 'location').text
    assignment = []
    if stream.accept(TokenType.LEFT_PAREN):
        while not stream.check(TokenType.RIGHT_PAREN):
            clock = expect_name(stream, 'clock')
            if any(c == clock.text for c, _ in assignment):
                raise stream.make_error(
                    f'clock `{clock.text}` assigned twice', clock)
            stream.expect(TokenType.EQUALS_SIGN)
            assignment.append((clock.text, _parseProbability(stream)))
            if not stream.accept(TokenType.COMMA):
                break
        stream.expect(TokenType.RIGHT_PAREN)
    stream.expect(TokenType.SEMICOLON)
    doc.initial = InitialState(location, tuple(assignment))


_DECLARATIONS = {
    'clocks': _parseClocks,
    'bound': _parseBound,
    'actions': _parseActions,
    'location': _parseLocation,
    'edge': _parseEdge,
    'target': _parseTargets,
    'init': _parseInit,
}


def _collectActions(doc, player):
    declared = doc.actions[player]
    if declared is not None:
        return tuple(declared)
    seen = []
    for edge in doc.edges:
        if edge.player == player and edge.action not in seen:
            seen.append(edge.action)
    return tuple(seen)


def parse_model(source: Union[ModelSource, str]) -> Ptga:
    """
    Parse a `.ptga` document.

    Args:
        source (:class:`ModelSource` or `str`): The document text, with an
            optional origin used in diagnostics.

    Returns:
        :class:`Ptga`: The parsed arena. Semantic checks are left to
        :func:`ptga.model.validate`; only lexical and syntactic errors,
        duplicate declarations and a missing `bound` are reported here, as
        a :class:`ParseError` carrying the row and column of the offending
        token.
    """
    if isinstance(source, str):
        source = ModelSource(source)
    stream = TokenStream(source)
    doc = _Document()
    if stream.accept('model'):
        doc.name = expect_name(stream, 'model').text
        stream.expect(TokenType.SEMICOLON)
    while not stream.finished_parsing:
        keyword = stream.expect(set(_DECLARATIONS))
        _DECLARATIONS[keyword.text](stream, doc)
    if doc.bound is None:
        raise stream.make_error('missing `bound` declaration')
    if not doc.clocks:
        raise stream.make_error('missing `clocks` declaration')
    model = Ptga(space=ClockSpace(tuple(doc.clocks), doc.bound),
                 locations=tuple(doc.locations),
                 actions_min=_collectActions(doc, MIN),
                 actions_max=_collectActions(doc, MAX),
                 edges=tuple(doc.edges),
                 targets=tuple(doc.targets),
                 initial=doc.initial,
                 name=doc.name)
    logger.debug('parsed %s: %d locations, %d edges', source.origin or
                 '<inline>', len(model.locations), len(model.edges))
    return model


def parse_constraint(text: str) -> ClockConstraint:
    """Parse a standalone clock constraint such as `x<=2 & x-y>1`."""
    stream = TokenStream(ModelSource(text))
    constraint = parse_constraint_tokens(stream)
    if not stream.finished_parsing:
        raise stream.make_error('unexpected trailing input')
    return constraint


def parse_model_file(path) -> Ptga:
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as error:
        raise UsageError(f'cannot read model `{path}`: {error.strerror}') \
            from error
    return parse_model(ModelSource(text, str(path)))
