# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
import math
import re
import sys
from fractions import Fraction
from typing import Union

Number = Union[Fraction, float]

# Package logger, children are created per module with
# `logging.getLogger(__name__)`.
logger = logging.getLogger('ptga')


class Color:
    YELLOW = '\033[93m'
    RED = '\033[91m'
    BOLD = '\033[1m'
    END = '\033[0m'


class PtgaError(RuntimeError):
    """Base class of every error raised by the `ptga` package."""
    pass


class UsageError(PtgaError):
    pass


class DomainError(PtgaError):
    pass


class ModelError(PtgaError):
    pass


class ResourceError(PtgaError):
    pass


class InternalError(PtgaError):
    pass


class ParseError(PtgaError):
    """
    A lexical or syntactic error in a model document. Carries the 1-based
    `row` and `column` of the offending token and renders the source line
    with a caret underneath.
    """

    def __init__(self, message, row, column, token='', line='', origin=None):
        self.message = message
        self.row = row
        self.column = column
        self.token = token
        self.line = line
        self.origin = origin
        where = f'{origin}:' if origin else ''
        text = f'{where}{row}:{column}: {message}'
        if token:
            text += f' (token: `{token}`)'
        if line:
            text += '\n' + line + '\n' + ' ' * (column - 1) + '^'
        super().__init__(text)


def _useColor(stream):
    return hasattr(stream, 'isatty') and stream.isatty()


def formatDiagnostic(kind, msg, stream=None):
    stream = sys.stderr if stream is None else stream
    if not _useColor(stream):
        return f'{kind}: {msg}'
    color = Color.RED if kind == 'error' else Color.YELLOW
    return color + kind + ': ' + Color.END + Color.BOLD + str(
        msg) + Color.END


def emitError(msg):
    """Print an error diagnostic on standard error."""
    print(formatDiagnostic('error', msg), file=sys.stderr)


def emitWarning(msg):
    """Print a warning diagnostic on standard error."""
    print(formatDiagnostic('warning', msg), file=sys.stderr)


def configureLogging(level):
    """Attach a standard error handler to the package logger."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            raise UsageError(f'unknown log level {level!r}')
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            logging.Formatter('%(name)s: %(levelname)s: %(message)s'))
        logger.addHandler(handler)
    logger.setLevel(level)


_NUMBER = re.compile(r'^\s*([+-]?\d+(?:\.\d*)?|[+-]?\.\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_number(text) -> Fraction:
    """
    Convert `p/q` or a decimal literal into an exact `Fraction`.

    Args:
        text (str): The literal, e.g. `0.5`, `1/3`, `2`.

    Returns:
        `Fraction`: The exact value. `0.1` becomes `1/10`, never the
        nearest binary double.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    match = _NUMBER.match(str(text))
    if match is None:
        raise UsageError(f'not an exact number: {text!r}')
    value = Fraction(match.group(1))
    if match.group(2) is not None:
        if '.' in match.group(1):
            raise UsageError(f'not an exact number: {text!r}')
        denominator = int(match.group(2))
        if denominator == 0:
            raise UsageError(f'zero denominator in {text!r}')
        value = value / denominator
    return value


def format_number(value) -> str:
    """Render an exact value as `p/q` (or `p` for integers, `inf`)."""
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf'
        value = Fraction(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def format_decimal(value, digits=12) -> str:
    """Decimal rendering for human-readable output."""
    if isinstance(value, float) and math.isinf(value):
        return 'inf'
    return f'{float(value):.{digits}g}'
