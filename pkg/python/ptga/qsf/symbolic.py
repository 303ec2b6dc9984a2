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
from typing import Dict, Tuple

from ..bra.abstraction import (BOTTOM, INF, SENSES, UPPER, BraAction,
                               BraState, bra_winner, enabled_bra_actions)
from ..clockalg import Region, region_reset, region_sample
from ..model import Ptga
from ..utils import UsageError
from .tree import (CONVEX_OP, MAX_OP, MIN_OP, Const, Qsf, combine,
                   elapse_transform, reset_transform)

logger = logging.getLogger(__name__)


def _delayLeaf(zeta: Region, alpha: BraAction):
    """
    The boundary delay of `alpha` as `(clock, i)` meaning `i - ν(clock)`, or
    `None` for a zero delay, valid on the closure of `zeta`. Which clock
    binds is constant on a region, so it is read off a sample.
    """
    target = alpha.region
    terms = []
    for k, (c, v) in enumerate(region_sample(zeta).items()):
        i = target.ints[k]
        if alpha.op != INF and k not in target.zero:
            i += 1
        terms.append((i - v, i, c))
    if not terms:
        return None
    if alpha.op == INF:
        delay, i, c = max(terms, key=lambda t: t[0])
        if delay <= 0:
            return None
    else:
        delay, i, c = min(terms, key=lambda t: t[0])
    return c, i


class _Builder(object):

    def __init__(self, model: Ptga, sense):
        self.model = model
        self.sense = sense
        self.memo: Dict[Tuple[str, Region, int], Qsf] = {}

    def action(self, location, zeta, alpha: BraAction, n) -> Qsf:
        edge = self.model.edge(location, alpha.action)
        weights, children = [], []
        for branch in edge.branches:
            after = region_reset(alpha.region, branch.resets)
            tail = self.value(branch.target, after, n - 1)
            weights.append(branch.probability)
            children.append(reset_transform(tail, branch.resets))
        body = children[0] if len(children) == 1 else combine(
            CONVEX_OP, children, weights)
        leaf = _delayLeaf(zeta, alpha)
        if leaf is None:
            return body
        return elapse_transform(body, *leaf)

    def value(self, location, zeta, n) -> Qsf:
        key = (location, zeta, n)
        if key in self.memo:
            return self.memo[key]
        if n == 0 or self.model.is_target(location):
            tree = Const(Fraction(0))
        else:
            state = BraState(location, region_sample(zeta), zeta)
            minMoves, maxMoves = enabled_bra_actions(self.model, state)
            if minMoves == [BOTTOM] and maxMoves == [BOTTOM]:
                tree = Const(Fraction(0))
            else:
                tree = self._round(location, zeta, minMoves, maxMoves, n)
        self.memo[key] = tree
        return tree

    def _round(self, location, zeta, minMoves, maxMoves, n):

        def outcome(alpha, beta):
            winner = bra_winner(alpha, beta, sense=self.sense)
            return self.action(location, zeta, winner, n)

        def node(op, trees):
            return trees[0] if len(trees) == 1 else combine(op, trees)

        if self.sense == UPPER:
            return node(MIN_OP, [
                node(MAX_OP, [outcome(a, b) for b in maxMoves])
                for a in minMoves
            ])
        return node(MAX_OP, [
            node(MIN_OP, [outcome(a, b) for a in minMoves]) for b in maxMoves
        ])


def regional_value_tree(model: Ptga, location, region: Region, n,
                        sense=UPPER) -> Qsf:
    """
    The `n`-step abstraction value of the states `(location, ν, region)` as
    one quasi-simple function of `ν` over the closure of `region`.

    The tree follows the value recursion round by round: successor trees
    are reset, mixed by branch probability, shifted by the boundary delay
    and combined by the min and max of the two players.
    """
    if sense not in SENSES:
        raise UsageError(f'unknown sense `{sense}`')
    if n < 0:
        raise UsageError(f'negative horizon {n}')
    builder = _Builder(model, sense)
    tree = builder.value(location, region, n)
    logger.debug('%d-step %s tree for (%s, %s): %d shared subtrees', n, sense,
                 location, region, len(builder.memo))
    return tree


