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
from typing import Dict, FrozenSet, Iterable, Set, Tuple

from ..model import MAX, MIN
from ..utils import ModelError
from .graph import CHANCE, PositionalStrategy, TurnBasedGame

logger = logging.getLogger(__name__)


def _allowed(g: TurnBasedGame, fixed):
    """Per node, the choice positions still open once `fixed` strategies
    are applied."""
    table = {s.player: s for s in fixed}
    allowed = []
    for v, kind in enumerate(g.kinds):
        if kind == CHANCE:
            allowed.append(range(len(g.outcomes[v])))
            continue
        strategy = table.get(g.owners[v])
        if strategy is not None and v in strategy:
            allowed.append((strategy.choice(v),))
        else:
            allowed.append(range(len(g.choices[v])))
    return allowed


def _target(g, v, position):
    if g.kinds[v] == CHANCE:
        return g.outcomes[v][position][1]
    return g.choices[v][position].target


def _attractor(g, allowed, seed: Iterable[int], W: Set[int], player,
               exclude=frozenset()):
    """
    Nodes of `W` from which `player` forces, with positive probability, a
    visit to `seed`: chance nodes and nodes of `player` need one edge into
    the set, opponent nodes need all their edges inside `W` to lead into it.
    Returns the set and, for nodes of `player`, the position that pulled
    them in.
    """
    inside = set(seed)
    pulledBy: Dict[int, int] = {}
    need = {}
    for v in W:
        if g.kinds[v] != CHANCE and g.owners[v] != player:
            need[v] = sum(1 for p in allowed[v] if _target(g, v, p) in W)
    queue = deque(sorted(inside))
    while queue:
        w = queue.popleft()
        for u, position in g.predecessors[w]:
            if u not in W or u in inside or u in exclude:
                continue
            if position not in allowed[u]:
                continue
            if g.kinds[u] == CHANCE or g.owners[u] == player:
                if g.kinds[u] != CHANCE:
                    pulledBy[u] = position
            else:
                need[u] -= 1
                if need[u] > 0:
                    continue
            inside.add(u)
            queue.append(u)
    return inside, pulledBy


def almost_sure_region(
        g: TurnBasedGame,
        fixed: Tuple[PositionalStrategy, ...] = ()
) -> Tuple[FrozenSet[int], Dict[int, int]]:
    """
    Nodes from which Min reaches a target with probability one, with the
    strategies in `fixed` imposed on their owners.

    Alternates a positive attractor of Min towards the targets with the
    removal of Max's positive attractor of the rest, until neither changes
    the candidate set.

    Returns:
        `(W, choice)`: the winning region and, for Min's free nodes in
        `W`, a choice position that decreases the attractor rank.
    """
    allowed = _allowed(g, fixed)
    W = set(range(len(g)))
    targets = set(g.targets)
    rounds = 0
    while True:
        rounds += 1
        reach, pulledBy = _attractor(g, allowed, targets, W, MIN)
        rest = W - reach
        if not rest:
            break
        trap, _ = _attractor(g, allowed, rest, W, MAX, exclude=targets)
        W -= trap
    logger.debug('almost-sure region: %d of %d nodes after %d rounds', len(W),
                 len(g), rounds)
    return frozenset(W), pulledBy


def infinite_value_states(g: TurnBasedGame,
                          allow_zeno=False,
                          model_non_zeno=True) -> FrozenSet[int]:
    """
    Nodes where Min cannot reach a target almost surely. Under structural
    non-Zenoness every play avoiding the targets accumulates unbounded
    time, so exactly these nodes have infinite expected reachability time.

    Raises `ModelError` if the arena failed the non-Zeno check and
    `allow_zeno` is not set.
    """
    if not model_non_zeno and not allow_zeno:
        raise ModelError('the arena is not structurally non-Zeno; infinite '
                         'values are unreliable (use allow_zeno to proceed)')
    W, _ = almost_sure_region(g)
    return frozenset(range(len(g))) - W


def almost_sure_strategy(g: TurnBasedGame,
                         fixed: Tuple[PositionalStrategy, ...] = ()
                        ) -> PositionalStrategy:
    """
    A Min strategy reaching the targets with probability one from every
    node of the almost-sure region, whatever Max does. Outside the region
    the first choice is taken.
    """
    W, pulledBy = almost_sure_region(g, fixed)
    table = {s.player: s for s in fixed}
    mine = table.get(MIN)
    choices = {}
    for v in g.owned_by(MIN):
        if mine is not None and v in mine:
            choices[v] = mine.choice(v)
        else:
            choices[v] = pulledBy.get(v, 0) if v in W else 0
    return PositionalStrategy.of(MIN, choices)
