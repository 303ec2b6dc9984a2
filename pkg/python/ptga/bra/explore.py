# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from ..clockalg import (ClockValuation, FracSignature, fractional_signature,
                        region_of, signature_within)
from ..config import get_settings
from ..model import MAX, MIN, Ptga
from ..utils import DomainError, ResourceError, UsageError
from .abstraction import (BOTTOM, BraAction, BraState, Move, _successors,
                          bra_delay, enabled_bra_actions)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraEdge(object):
    """An enabled action of one state with its delay and distribution over
    state indices."""
    action: BraAction
    delay: Fraction
    successors: Tuple[Tuple[Fraction, int], ...]


@dataclass(frozen=True)
class BraGame(object):
    """
    The reachable part of the boundary region abstraction. State 0 is the
    initial state; states are numbered in breadth-first discovery order.
    `min_edges[i]` and `max_edges[i]` hold the enabled actions of state `i`
    (possibly none).
    """
    model: Ptga
    states: Tuple[BraState, ...]
    min_edges: Tuple[Tuple[BraEdge, ...], ...]
    max_edges: Tuple[Tuple[BraEdge, ...], ...]
    initial_signature: FracSignature

    @cached_property
    def _stateIndex(self) -> Dict[BraState, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def targets(self) -> frozenset:
        return frozenset(i for i, s in enumerate(self.states)
                         if self.model.is_target(s.location))

    def __len__(self):
        return len(self.states)

    def index_of(self, state: BraState) -> int:
        try:
            return self._stateIndex[state]
        except KeyError:
            raise DomainError(f'{state} is outside the explored abstraction') \
                from None

    def find(self, state: BraState) -> Optional[int]:
        return self._stateIndex.get(state)

    def is_target(self, i) -> bool:
        return i in self.targets

    def edges(self, i, player) -> Tuple[BraEdge, ...]:
        if player == MIN:
            return self.min_edges[i]
        if player == MAX:
            return self.max_edges[i]
        raise UsageError(f'unknown player `{player}`')

    def actions(self, i, player) -> List[Move]:
        """Enabled actions of `player` in state `i`, or `[BOTTOM]`."""
        return [e.action for e in self.edges(i, player)] or [BOTTOM]

    def edge(self, i, action: BraAction) -> BraEdge:
        for player in (MIN, MAX):
            for e in self.edges(i, player):
                if e.action == action:
                    return e
        raise DomainError(f'{action} is not enabled in state {i}')


def _initialState(model, init) -> BraState:
    if init is None:
        location, nu = model.initial_configuration()
    elif isinstance(init, BraState):
        return init
    else:
        location, nu = init
        if not isinstance(nu, ClockValuation):
            nu = ClockValuation.of(model.space, nu)
    if not model.region_in_invariant(location, region_of(nu)):
        raise DomainError(f'initial valuation {nu} violates the invariant '
                          f'of `{location}`')
    return BraState.embed(location, nu)


def build_reachable_bra(model: Ptga, init=None, state_cap=None) -> BraGame:
    """
    Explore the boundary region abstraction breadth first from the state
    `(ℓ0, ν0, [ν0])` under every enabled action of both players.

    Args:
        model (:class:`Ptga`): A validated arena.
        init: `(location, valuation)` to start from; a valuation may be a
            :class:`ClockValuation` or a clock-to-value mapping. Defaults to
            the model's initial configuration.
        state_cap (int): Abort with `ResourceError` beyond this many
            states. Defaults to `PTGA_STATE_CAP`.

    Returns:
        :class:`BraGame`: States are deduplicated on exact equality of
        location, valuation and region. Target states are explored like
        any other state.
    """
    cap = get_settings().state_cap if state_cap is None else state_cap
    start = _initialState(model, init)
    states = [start]
    index = {start: 0}
    edges = {MIN: [], MAX: []}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        s = states[i]
        minMoves, maxMoves = enabled_bra_actions(model, s)
        for player, moves in ((MIN, minMoves), (MAX, maxMoves)):
            row = []
            for alpha in moves:
                if alpha is BOTTOM:
                    continue
                successors = []
                for p, succ in _successors(model, s, alpha):
                    j = index.get(succ)
                    if j is None:
                        j = index[succ] = len(states)
                        if j >= cap:
                            raise ResourceError(
                                f'abstraction exceeds the state cap of {cap}')
                        states.append(succ)
                        queue.append(j)
                    successors.append((p, j))
                row.append(BraEdge(alpha, bra_delay(s, alpha),
                                   tuple(successors)))
            edges[player].append(tuple(row))
        if (i + 1) % 10000 == 0:
            logger.info('expanded %d of %d states', i + 1, len(states))
    logger.info('abstraction has %d states', len(states))
    return BraGame(model, tuple(states), tuple(edges[MIN]),
                   tuple(edges[MAX]), fractional_signature(start.valuation))


def check_signatures(game: BraGame) -> bool:
    """
    Every reachable valuation's fractional signature must be a subsequence
    of some shift of the initial one; this bounds the abstraction.
    """
    for state in game.states:
        if not signature_within(fractional_signature(state.valuation),
                                game.initial_signature):
            logger.error('signature of %s escapes the initial one', state)
            return False
    return True
