# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from ..bra.abstraction import BOTTOM, INF, BraState, bra_winner
from ..bra.explore import BraEdge, BraGame
from ..bra.turn_based import PROCEED
from ..clockalg import delay_bounds, region_of
from ..config import get_settings
from ..game.graph import PositionalStrategy, TurnBasedGame
from ..model import MAX, MIN, Ptga, opponent
from ..utils import DomainError, UsageError, parse_number
from .semantics import Configuration, Move, TimedMove, is_available

logger = logging.getLogger(__name__)


def _window(edge: BraEdge, config: Configuration) -> Tuple[Fraction, Fraction]:
    return delay_bounds(config.valuation, edge.action.region)


def _realize(model, config, edge: BraEdge, player, shift) -> TimedMove:
    """
    A concrete delay for a boundary action: the boundary itself when it
    lies in the target region or the action is available there, otherwise
    `shift` inside the region (or its midpoint if the region is shorter).
    """
    alpha = edge.action
    tInf, tSup = _window(edge, config)
    exact = tInf if alpha.op == INF else tSup
    move = TimedMove(exact, alpha.action)
    if region_of(config.valuation.elapse(exact)) == alpha.region or \
            is_available(model, config, move, player):
        return move
    if alpha.op == INF:
        t = tInf + shift
        if t >= tSup:
            t = (tInf + tSup) / 2
    else:
        t = tSup - shift
        if t <= tInf:
            t = (tInf + tSup) / 2
    return TimedMove(t, alpha.action)


def _wins(player, mine: Fraction, theirs: Fraction) -> bool:
    """Whether `player`'s delay beats the opponent's; ties go to Max."""
    return mine < theirs if player == MIN else mine <= theirs


class ConcreteAdapter(object):
    """
    A positional strategy of `player` on concrete configurations, realized
    from positional strategies of the turn-based game built on `game`.

    The first mover plays the boundary action its strategy picks. The
    responder first replays the first mover's choice, then realizes its
    own answer: a winning reply, or for `proceed` its latest action that
    loses (or idling). The responder's delay is nudged within its window
    when the realized delays would not produce the intended winner.
    """

    def __init__(self, model: Ptga, game: BraGame, turn_based: TurnBasedGame,
                 strategies: Dict[str, PositionalStrategy], player,
                 epsilon_shift=None):
        if player not in (MIN, MAX):
            raise UsageError(f'unknown player `{player}`')
        self.model = model
        self.game = game
        self.turn_based = turn_based
        self.strategies = strategies
        self.player = player
        shift = get_settings().epsilon_shift if epsilon_shift is None \
            else parse_number(epsilon_shift)
        if shift <= 0:
            raise UsageError('the epsilon shift must be positive')
        self.epsilon_shift = shift
        self.first = turn_based.first_player
        self.second = opponent(self.first)
        for p in (self.first, player):
            if p not in strategies:
                raise UsageError(f'a strategy of {p} is required')

    @cached_property
    def _byRegion(self) -> Dict[tuple, List[int]]:
        table = {}
        for i, s in enumerate(self.game.states):
            table.setdefault((s.location, s.region), []).append(i)
        return table

    def lookup(self, config: Configuration) -> int:
        """
        The abstraction state of `config`.

        The exact state `(location, valuation, [valuation])` is used when it
        was explored. Otherwise the candidates are the explored states with
        the same location whose region is `[valuation]`, and the one whose
        valuation is closest to `config` in the sup norm is returned, ties
        going to the smallest state index.

        Raises `DomainError` when no explored state shares the location and
        region of `config`.
        """
        i = self.game.find(BraState.embed(config.location, config.valuation))
        if i is not None:
            return i
        region = region_of(config.valuation)
        candidates = self._byRegion.get((config.location, region))
        if not candidates:
            raise DomainError(f'{config} is outside the explored abstraction')
        return min(candidates,
                   key=lambda j: (self.game.states[j].valuation.distance(
                       config.valuation), j))

    def _edgeOf(self, i, player, label) -> Optional[BraEdge]:
        for e in self.game.edges(i, player):
            if e.action.label() == label:
                return e
        return None

    def _firstChoice(self, i) -> Tuple[Optional[BraEdge], int]:
        g = self.turn_based
        strategy = self.strategies[self.first]
        position = strategy.choice(i)
        edges = self.game.edges(i, self.first)
        edge = edges[position] if edges else None
        return edge, g.choices[i][position].target

    def __call__(self, config: Configuration) -> Move:
        i = self.lookup(config)
        edge, responder = self._firstChoice(i)
        shift = self.epsilon_shift
        if self.player == self.first:
            if edge is None:
                return BOTTOM
            return _realize(self.model, config, edge, self.player, shift)
        label = self.strategies[self.player].label(self.turn_based, responder)
        alpha = edge.action if edge is not None else BOTTOM
        if label == PROCEED:
            own = self._latestLosing(i, alpha)
            mustWin = False
        else:
            own = self._edgeOf(i, self.player, label)
            mustWin = True
        if own is None:
            return BOTTOM
        move = _realize(self.model, config, own, self.player, shift)
        if edge is None:
            return move
        theirs = _realize(self.model, config, edge, self.first, shift).delay
        return self._adjust(config, own, move, theirs, mustWin)

    def _latestLosing(self, i, alpha) -> Optional[BraEdge]:
        losing = []
        for position, e in enumerate(self.game.edges(i, self.player)):
            pair = (alpha, e.action) if self.first == MIN else (e.action,
                                                                 alpha)
            if bra_winner(*pair, sense=self.turn_based.sense) == alpha:
                losing.append((e.delay, position, e))
        return max(losing, key=lambda t: t[:2])[2] if losing else None

    def _adjust(self, config, own: BraEdge, move: TimedMove, theirs,
                mustWin) -> TimedMove:
        if _wins(self.player, move.delay, theirs) == mustWin:
            return move
        lo, hi = _window(own, config)
        if mustWin:
            candidates = [theirs] if self.player == MAX else \
                [(lo + theirs) / 2]
        else:
            candidates = [hi, (theirs + hi) / 2]
            if self.player == MIN:
                candidates.insert(0, theirs)
        for t in candidates:
            if not lo <= t <= hi or _wins(self.player, t, theirs) != mustWin:
                continue
            nudged = TimedMove(t, move.action)
            if is_available(self.model, config, nudged, self.player):
                return nudged
        logger.debug('cannot realize the intended winner of %s in %s',
                     move, config)
        return move


def bra_strategy_to_concrete(model: Ptga,
                             game: BraGame,
                             turn_based: TurnBasedGame,
                             strategies: Dict[str, PositionalStrategy],
                             player,
                             epsilon_shift=None) -> ConcreteAdapter:
    """
    Turn solver strategies into a strategy of `player` on configurations.

    Args:
        model (:class:`Ptga`): The arena.
        game (:class:`BraGame`): The explored abstraction.
        turn_based (:class:`TurnBasedGame`): Its reduction the strategies
            belong to.
        strategies (dict): Positional strategies keyed by player; the first
            mover's strategy is always required.
        player (str): The player to realize.
        epsilon_shift: Distance kept from open region boundaries; defaults
            to `PTGA_EPSILON_SHIFT`.
    """
    return ConcreteAdapter(model, game, turn_based, strategies, player,
                           epsilon_shift)
