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
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

import numpy as np

from ..config import get_settings
from ..model import MAX, MIN
from ..utils import ResourceError, UsageError
from .exact import strategy_improvement
from .graph import (CHANCE, FIRST, RESPONDER, PositionalStrategy,
                    TurnBasedGame, ValueVector)
from .qualitative import infinite_value_states

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Solution(object):
    """
    Values of every node with one positional strategy per player.
    `iterations` counts Bellman rounds in iterative mode and strategy
    improvement rounds in exact mode, where `residual` is 0.
    """
    values: ValueVector
    strategies: Dict[str, PositionalStrategy]
    iterations: int
    residual: float
    exact: bool

    def value(self, v):
        return self.values[v]


def _sweepFloat(g: TurnBasedGame, x: np.ndarray) -> np.ndarray:
    out = x.copy()
    layer = g.layers[CHANCE]
    if len(layer.nodes):
        weighted = layer.weight * out[layer.target]
        out[layer.nodes] = layer.delay + np.add.reduceat(weighted,
                                                         layer.ptr[:-1])
    for kind in (RESPONDER, FIRST):
        layer = g.layers[kind]
        if not len(layer.nodes):
            continue
        succ = out[layer.target]
        lo = np.minimum.reduceat(succ, layer.ptr[:-1])
        hi = np.maximum.reduceat(succ, layer.ptr[:-1])
        out[layer.nodes] = np.where(layer.is_min, lo, hi)
    out[g.target_mask] = 0.0
    return out


def _sweepExact(g: TurnBasedGame, x) -> list:
    out = list(x)
    for v in g.nodes_of(CHANCE):
        out[v] = g.delays[v] + sum(p * out[j] for p, j in g.outcomes[v])
    for kind in (RESPONDER, FIRST):
        for v in g.nodes_of(kind):
            pick = min if g.owners[v] == MIN else max
            out[v] = pick(out[c.target] for c in g.choices[v])
    for v in g.targets:
        out[v] = Fraction(0)
    return out


def bellman_step(g: TurnBasedGame, V: ValueVector) -> ValueVector:
    """
    One round of the optimality operator: chance nodes take their delay
    plus the expected first-mover value, responders and then first-movers
    take the minimum or maximum over their choices, targets stay 0.

    Exact vectors are updated with `Fraction` arithmetic, float vectors
    with one vectorized pass per node kind.
    """
    if len(V) != len(g):
        raise UsageError(f'value vector has {len(V)} entries for a game of '
                         f'{len(g)} nodes')
    if V.exact:
        return ValueVector(tuple(_sweepExact(g, V.values)), exact=True)
    return ValueVector(_sweepFloat(g, np.asarray(V.values, dtype=np.float64)))


def n_step_values(g: TurnBasedGame, n, exact=False) -> ValueVector:
    """The `n`-fold Bellman round from the zero vector."""
    if n < 0:
        raise UsageError(f'negative horizon {n}')
    V = ValueVector.zeros(len(g), exact)
    for _ in range(n):
        V = bellman_step(g, V)
    return V


def greedy_strategies(g: TurnBasedGame,
                      V: ValueVector) -> Dict[str, PositionalStrategy]:
    """Per player, the best choice against `V` at each owned node; the
    lowest position wins ties."""
    table = {MIN: {}, MAX: {}}
    for v, owner in enumerate(g.owners):
        if owner is None:
            continue
        values = [V[c.target] for c in g.choices[v]]
        best = min(values) if owner == MIN else max(values)
        table[owner][v] = values.index(best)
    return {p: PositionalStrategy.of(p, table[p]) for p in (MIN, MAX)}


def _iterate(g, epsilon, max_iterations, infinite):
    x = np.zeros(len(g), dtype=np.float64)
    mask = np.zeros(len(g), dtype=bool)
    mask[list(infinite)] = True
    x[mask] = math.inf
    finite = ~mask
    residual = math.inf
    for iteration in range(1, max_iterations + 1):
        y = _sweepFloat(g, x)
        y[mask] = math.inf
        residual = float(np.max(np.abs(y[finite] - x[finite]),
                                initial=0.0))
        x = y
        if iteration % 10000 == 0:
            logger.info('iteration %d: residual %.3e', iteration, residual)
        if residual < epsilon:
            return x, iteration, residual
    raise ResourceError(f'value iteration did not reach residual {epsilon} '
                        f'within {max_iterations} iterations (last residual '
                        f'{residual:.3e})')


def solve(g: TurnBasedGame,
          epsilon=None,
          exact=False,
          max_iterations=None,
          allow_zeno=False,
          model_non_zeno=True) -> Solution:
    """
    Infinite-horizon values and positional strategies of both players.

    Nodes where Min cannot reach a target almost surely are set to
    infinity first. Iterative mode then runs value iteration from zero on
    the remaining nodes until the sup-norm change of one round drops below
    `epsilon` and extracts greedy strategies. Exact mode runs strategy
    improvement with rational linear solves.

    Args:
        g (:class:`TurnBasedGame`): The game to solve.
        epsilon (float): Stopping tolerance; defaults to `PTGA_EPSILON`.
        exact (bool): Use strategy improvement over `Fraction`.
        max_iterations (int): Iteration cap; defaults to
            `PTGA_MAX_ITERATIONS`.
        allow_zeno (bool): Proceed on an arena that failed the non-Zeno
            check.
        model_non_zeno (bool): Result of that check.

    Returns:
        :class:`Solution`
    """
    settings = get_settings().replace(epsilon=epsilon,
                                      max_iterations=max_iterations)
    if not settings.epsilon > 0:
        raise UsageError(f'epsilon must be positive, got {settings.epsilon}')
    infinite = infinite_value_states(g, allow_zeno, model_non_zeno)
    logger.info('%d of %d nodes have infinite value', len(infinite), len(g))
    if exact:
        values, strategies, rounds = strategy_improvement(g)
        return Solution(values, strategies, rounds, 0.0, True)
    x, iterations, residual = _iterate(g, settings.epsilon,
                                       settings.max_iterations, infinite)
    logger.info('value iteration converged after %d iterations (residual '
                '%.3e)', iterations, residual)
    values = ValueVector(x)
    return Solution(values, greedy_strategies(g, values), iterations,
                    residual, False)
