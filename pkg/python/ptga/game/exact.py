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
from collections import deque
from fractions import Fraction
from typing import Dict, List, Tuple

from ..model import MAX, MIN, opponent
from ..utils import InternalError, UsageError
from .graph import (CHANCE, RESPONDER, PositionalStrategy, TurnBasedGame,
                    ValueVector)
from .qualitative import almost_sure_region, almost_sure_strategy

logger = logging.getLogger(__name__)


def _step(g, v, strategies):
    """Successors of `v` in the Markov chain induced by `strategies`."""
    if g.kinds[v] == CHANCE:
        return [j for _, j in g.outcomes[v]]
    return [strategies[g.owners[v]].target(g, v)]


def _solveSparse(rows: List[Dict[int, Fraction]],
                 rhs: List[Fraction]) -> List[Fraction]:
    """
    Gaussian elimination on dict rows in the given order, pivoting on the
    diagonal. The systems built here are nonsingular M-matrices, for which
    every diagonal pivot stays positive.
    """
    n = len(rows)
    holders = [set() for _ in range(n)]
    for i, row in enumerate(rows):
        for column in row:
            holders[column].add(i)
    for k in range(n):
        pivot = rows[k].get(k, 0)
        if pivot == 0:
            raise InternalError(f'singular system at unknown {k}')
        for i in sorted(holders[k]):
            if i <= k:
                continue
            factor = rows[i].pop(k) / pivot
            for column, coefficient in rows[k].items():
                if column == k:
                    continue
                value = rows[i].get(column, 0) - factor * coefficient
                if value == 0:
                    rows[i].pop(column, None)
                    holders[column].discard(i)
                else:
                    rows[i][column] = value
                    holders[column].add(i)
            rhs[i] -= factor * rhs[k]
        holders[k] = {k}
    x = [Fraction(0)] * n
    for k in reversed(range(n)):
        total = rhs[k]
        for column, coefficient in rows[k].items():
            if column != k:
                total -= coefficient * x[column]
        x[k] = total / rows[k][k]
    return x


def evaluate_strategy_pair(g: TurnBasedGame, mu: PositionalStrategy,
                           chi: PositionalStrategy) -> ValueVector:
    """
    Expected total delay to a target in the Markov chain induced by `mu`
    (Min) and `chi` (Max), exactly.

    Nodes that reach a target with probability below one get `math.inf`.
    The remaining first-mover nodes give one linear equation each,
    `x_f - sum(p * x_j) = delay`, following the two decision choices to a
    chance node; the other node values are filled in from them.
    """
    if mu.player != MIN or chi.player != MAX:
        raise UsageError('expected a Min and a Max strategy')
    strategies = {MIN: mu, MAX: chi}
    n = len(g)
    preds = [[] for _ in range(n)]
    for u in range(n):
        if g.is_target(u):
            continue
        for w in _step(g, u, strategies):
            preds[w].append(u)

    reaches = set(g.targets)
    queue = deque(sorted(reaches))
    while queue:
        w = queue.popleft()
        for u in preds[w]:
            if u not in reaches:
                reaches.add(u)
                queue.append(u)
    infinite = set(range(n)) - reaches
    queue = deque(sorted(infinite))
    while queue:
        w = queue.popleft()
        for u in preds[w]:
            if u not in infinite:
                infinite.add(u)
                queue.append(u)

    unknowns = [f for f in g.first_nodes
                if not g.is_target(f) and f not in infinite]
    column = {f: k for k, f in enumerate(unknowns)}
    rows, rhs = [], []
    for f in unknowns:
        c = f
        while g.kinds[c] != CHANCE:
            c = strategies[g.owners[c]].target(g, c)
        row = {column[f]: Fraction(1)}
        for p, j in g.outcomes[c]:
            if g.is_target(j):
                continue
            k = column[j]
            row[k] = row.get(k, 0) - p
            if row[k] == 0:
                del row[k]
        rows.append(row)
        rhs.append(g.delays[c])
    solution = _solveSparse(rows, rhs)

    values = [math.inf] * n
    for f in g.first_nodes:
        if g.is_target(f):
            values[f] = Fraction(0)
        elif f in column:
            values[f] = solution[column[f]]
    for v in g.nodes_of(CHANCE):
        if v not in infinite:
            values[v] = g.delays[v] + sum(p * values[j]
                                          for p, j in g.outcomes[v])
    for v in g.nodes_of(RESPONDER):
        values[v] = values[strategies[g.owners[v]].target(g, v)]
    return ValueVector(tuple(values), exact=True)


def _better(player, candidate, incumbent) -> bool:
    return candidate < incumbent if player == MIN else candidate > incumbent


def _improve(g, strategy: PositionalStrategy, values: ValueVector,
             W) -> Tuple[PositionalStrategy, int]:
    """
    One switch round for the owner of `strategy`: at every node of `W` move
    to the best choice (lowest position among equals) when it strictly
    beats the current one. Choices leaving `W` are not considered.
    """
    player = strategy.player
    choices = strategy.as_dict()
    switched = 0
    for v in g.owned_by(player):
        if v not in W or g.is_target(v):
            continue
        best = None
        for position, c in enumerate(g.choices[v]):
            if c.target not in W:
                continue
            if best is None or _better(player, values[c.target],
                                       values[g.choices[v][best].target]):
                best = position
        current = values[g.choices[v][choices[v]].target]
        if best is not None and _better(player,
                                        values[g.choices[v][best].target],
                                        current):
            choices[v] = best
            switched += 1
    return PositionalStrategy.of(player, choices), switched


def _pair(player, mine, theirs):
    return (mine, theirs) if player == MIN else (theirs, mine)


def best_response(
        g: TurnBasedGame, fixed: PositionalStrategy,
        player=None) -> Tuple[PositionalStrategy, ValueVector]:
    """
    An optimal positional strategy of `player` against the fixed strategy
    of the opponent, and the resulting exact values.

    Solved by strategy iteration on the nodes where Min reaches a target
    almost surely under `fixed`; elsewhere the value is infinite whatever
    Min does.

    Args:
        g (:class:`TurnBasedGame`): The game.
        fixed (:class:`PositionalStrategy`): The opponent's strategy.
        player (str): The responding player; defaults to the opponent of
            `fixed.player`.
    """
    player = opponent(fixed.player) if player is None else player
    if player == fixed.player:
        raise UsageError(f'{player} cannot respond to its own strategy')
    W, _ = almost_sure_region(g, (fixed,))
    if player == MIN:
        strategy = almost_sure_strategy(g, (fixed,))
    else:
        choices = {}
        for v in g.owned_by(MAX):
            leaving = [p for p, c in enumerate(g.choices[v])
                       if c.target not in W]
            choices[v] = leaving[0] if v not in W and leaving else 0
        strategy = PositionalStrategy.of(MAX, choices)
    rounds = 0
    while True:
        rounds += 1
        values = evaluate_strategy_pair(g, *_pair(player, strategy, fixed))
        strategy, switched = _improve(g, strategy, values, W)
        if not switched:
            break
    logger.debug('best response of %s after %d rounds', player, rounds)
    return strategy, values


def strategy_improvement(g: TurnBasedGame):
    """
    Exact values and optimal positional strategies. Min improves its
    strategy, starting from a strategy that reaches the targets almost
    surely wherever that is possible, each round against Max's best
    response, until no strict improvement remains.

    Returns:
        `(values, {MIN: mu, MAX: chi}, rounds)`
    """
    W, _ = almost_sure_region(g)
    mu = almost_sure_strategy(g)
    rounds = 0
    while True:
        rounds += 1
        chi, values = best_response(g, mu, MAX)
        mu, switched = _improve(g, mu, values, W)
        logger.info('strategy improvement round %d: %d switches', rounds,
                    switched)
        if not switched:
            break
    return values, {MIN: mu, MAX: chi}, rounds
