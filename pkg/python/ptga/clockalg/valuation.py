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
from typing import Dict, Iterable, Mapping, Tuple

from ..utils import DomainError, UsageError, format_number, parse_number


@dataclass(frozen=True)
class ClockSpace(object):
    """The clocks of a model, in declaration order, and the global bound K."""
    clocks: Tuple[str, ...]
    bound: int

    def __post_init__(self):
        if len(set(self.clocks)) != len(self.clocks):
            raise UsageError(f'duplicate clock in {self.clocks}')
        if not isinstance(self.bound, int) or self.bound < 1:
            raise UsageError(f'clock bound must be a positive integer, '
                             f'got {self.bound!r}')

    def __len__(self):
        return len(self.clocks)

    def index(self, clock) -> int:
        try:
            return self.clocks.index(clock)
        except ValueError:
            raise UsageError(f'unknown clock `{clock}`') from None

    def indices(self, clocks: Iterable[str]) -> frozenset:
        return frozenset(self.index(c) for c in clocks)


@dataclass(frozen=True)
class ClockValuation(object):
    """
    An exact clock valuation. `values[i]` is the value of `space.clocks[i]`;
    every value lies in `[0, K]`.
    """
    space: ClockSpace
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space.clocks):
            raise UsageError('valuation does not cover the clock set '
                             f'{self.space.clocks}')
        for clock, value in zip(self.space.clocks, self.values):
            if not isinstance(value, Fraction):
                raise UsageError(f'clock `{clock}` must hold a Fraction')
            if value < 0 or value > self.space.bound:
                raise DomainError(f'clock `{clock}` = {format_number(value)} '
                                  f'outside [0, {self.space.bound}]')

    @staticmethod
    def of(space: ClockSpace, assignment: Mapping[str, object] = None):
        """
        Build a valuation from a partial mapping. Missing clocks are 0 and
        values may be given as `p/q` strings, decimals or `Fraction`s.
        """
        assignment = dict(assignment or {})
        for clock in assignment:
            space.index(clock)
        return ClockValuation(
            space,
            tuple(
                parse_number(assignment.get(c, 0)) for c in space.clocks))

    @staticmethod
    def zero(space: ClockSpace):
        return ClockValuation(space, tuple(Fraction(0) for _ in space.clocks))

    def __getitem__(self, clock) -> Fraction:
        return self.values[self.space.index(clock)]

    def items(self):
        return zip(self.space.clocks, self.values)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.items())

    def elapse(self, delay) -> ClockValuation:
        """Return `ν + t`. Raises `DomainError` past the bound K."""
        delay = Fraction(delay)
        if delay < 0:
            raise DomainError(f'negative delay {format_number(delay)}')
        return ClockValuation(self.space, tuple(v + delay for v in self.values))

    def reset(self, clocks: Iterable[str]) -> ClockValuation:
        """Return `ν_C`, the valuation with every clock of `clocks` set to 0."""
        indices = self.space.indices(clocks)
        return ClockValuation(
            self.space,
            tuple(
                Fraction(0) if i in indices else v
                for i, v in enumerate(self.values)))

    def distance(self, other: ClockValuation) -> Fraction:
        """Sup-norm distance between two valuations over the same clocks."""
        if other.space != self.space:
            raise UsageError('valuations over different clock sets')
        if not self.values:
            return Fraction(0)
        return max(abs(a - b) for a, b in zip(self.values, other.values))

    def __str__(self):
        inner = ', '.join(f'{c}={format_number(v)}' for c, v in self.items())
        return f'({inner})'
