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
from typing import Callable, Iterator, List, Tuple, Union

from ..bra.abstraction import Bottom
from ..clockalg import ClockValuation, satisfies
from ..model import MAX, MIN, Ptga
from ..utils import DomainError, UsageError, format_number, parse_number


@dataclass(frozen=True)
class Configuration(object):
    location: str
    valuation: ClockValuation

    @staticmethod
    def of(model: Ptga, location, assignment=None) -> Configuration:
        """Build a configuration and check it against the invariant."""
        config = Configuration(location,
                               ClockValuation.of(model.space, assignment))
        if not satisfies(config.valuation, model.location(location).invariant):
            raise DomainError(f'{config} violates the invariant of '
                              f'`{location}`')
        return config

    def __str__(self):
        return f'({self.location}, {self.valuation})'


@dataclass(frozen=True)
class TimedMove(object):
    """Wait `delay` time units, then play `action`."""
    delay: Fraction
    action: str

    def __post_init__(self):
        if not isinstance(self.delay, Fraction):
            object.__setattr__(self, 'delay', parse_number(self.delay))
        if self.delay < 0:
            raise UsageError(f'negative delay {format_number(self.delay)}')

    def __str__(self):
        return f'({format_number(self.delay)}, {self.action})'


Move = Union[TimedMove, Bottom]

# A positional strategy on configurations.
Adapter = Callable[[Configuration], Move]


def is_available(model: Ptga, config: Configuration, move: Move,
                 player) -> bool:
    """
    `move` is available to `player` in `config` when the action is one of
    the player's actions with an edge at the location, the invariant holds
    while waiting (invariants are convex, so at both ends), the guard holds
    after the delay, and every branch lands inside its target invariant.
    """
    if isinstance(move, Bottom):
        return False
    try:
        if model.owner(move.action) != player:
            return False
        edge = model.edge(config.location, move.action)
        moved = config.valuation.elapse(move.delay)
    except (UsageError, DomainError):
        return False
    invariant = model.location(config.location).invariant
    if not (satisfies(config.valuation, invariant) and
            satisfies(moved, invariant) and satisfies(moved, edge.guard)):
        return False
    return all(
        satisfies(moved.reset(b.resets),
                  model.location(b.target).invariant) for b in edge.branches)


@dataclass(frozen=True)
class StepOutcome(object):
    """The performed move, its owner, and the distribution it induces."""
    winner: str
    move: TimedMove
    distribution: Tuple[Tuple[Fraction, Configuration], ...]


def concrete_step(model: Ptga, config: Configuration, m: Move,
                  x: Move) -> StepOutcome:
    """
    One round of the game from `config` with Min's move `m` and Max's move
    `x`. Min's move is performed iff Max is idle or Min's delay is strictly
    smaller; equal delays go to Max. Clocks advance by the winner's delay,
    then each branch resets its clocks. Branches leading to the same
    configuration are merged.

    Raises `DomainError` if both players are idle or a move is not
    available.
    """
    if isinstance(m, Bottom) and isinstance(x, Bottom):
        raise DomainError(f'both players are idle in {config}')
    for player, move in ((MIN, m), (MAX, x)):
        if not isinstance(move, Bottom) and \
                not is_available(model, config, move, player):
            raise DomainError(f'{move} is not available to {player} in '
                              f'{config}')
    if isinstance(x, Bottom) or (not isinstance(m, Bottom) and
                                 m.delay < x.delay):
        winner, move = MIN, m
    else:
        winner, move = MAX, x
    moved = config.valuation.elapse(move.delay)
    merged = {}
    for branch in model.edge(config.location, move.action).branches:
        succ = Configuration(branch.target, moved.reset(branch.resets))
        merged[succ] = merged.get(succ, Fraction(0)) + branch.probability
    return StepOutcome(winner, move, tuple((p, c) for c, p in merged.items()))


@dataclass(frozen=True)
class Play(object):
    """
    A finite play: `start` followed by steps `(min_move, max_move, config)`
    where `config` is the configuration the step led to.
    """
    start: Configuration
    steps: Tuple[Tuple[Move, Move, Configuration], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def last(self) -> Configuration:
        return self.steps[-1][2] if self.steps else self.start

    def configurations(self) -> List[Configuration]:
        return [self.start] + [c for _, _, c in self.steps]

    def extend(self, m: Move, x: Move, config: Configuration) -> Play:
        return Play(self.start, self.steps + ((m, x, config),))


def play_measure(model: Ptga, play: Play) -> Tuple[Fraction, Fraction]:
    """
    The probability of `play` (product of the branch probabilities taken)
    and its reachability time (sum of the performed delays until the first
    target configuration, or of all of them if none is reached).

    Raises `DomainError` if a step is not a transition of the game.
    """
    probability, time = Fraction(1), Fraction(0)
    current = play.start
    reached = model.is_target(current.location)
    for k, (m, x, succ) in enumerate(play.steps):
        outcome = concrete_step(model, current, m, x)
        p = dict((c, q) for q, c in outcome.distribution).get(succ)
        if p is None:
            raise DomainError(f'step {k} of the play cannot reach {succ}')
        probability *= p
        if not reached:
            time += outcome.move.delay
        reached = reached or model.is_target(succ.location)
        current = succ
    return probability, time


def enumerate_plays(model: Ptga, mu: Adapter, chi: Adapter,
                    init: Configuration,
                    depth) -> Iterator[Tuple[Play, Fraction, Fraction]]:
    """
    Every play of at most `depth` steps from `init` under the two
    strategies, stopping at targets and where both players are idle,
    together with its probability and time.
    """

    def walk(play: Play, probability, time):
        config = play.last
        if model.is_target(config.location) or len(play) == depth:
            yield play, probability, time
            return
        m, x = mu(config), chi(config)
        if isinstance(m, Bottom) and isinstance(x, Bottom):
            yield play, probability, time
            return
        outcome = concrete_step(model, config, m, x)
        for p, succ in outcome.distribution:
            yield from walk(play.extend(m, x, succ), probability * p,
                            time + outcome.move.delay)

    yield from walk(Play(init), Fraction(1), Fraction(0))

