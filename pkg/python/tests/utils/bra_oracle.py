# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
"""
Direct n-step evaluation of the simultaneous-move abstraction.

The winner of a round is derived here from symbolic delays: the regions of
the state's future are numbered in time order, a move into a thin region
happens at one instant, an `inf` move just after its region is entered and
a `sup` move just before it is left. Min's move is performed iff its delay
is strictly smaller. The player moving second picks its own offset knowing
the first player's, and Max keeps ties.
"""

from fractions import Fraction

import ptga


def _delay(state, move):
    """`(base, slope)`: the delay is `base + slope * d` for a small `d > 0`."""
    p = ptga.region_future(state.region).index(move.region)
    if ptga.is_thin(move.region):
        return (p, 0), 0
    if move.op == ptga.INF:
        return (p, 0), 1
    return (p, 1), -1


def _winner(state, alpha, beta, sense):
    if isinstance(alpha, ptga.Bottom):
        return beta
    if isinstance(beta, ptga.Bottom):
        return alpha
    (a, sa), (b, sb) = _delay(state, alpha), _delay(state, beta)
    if a != b:
        return alpha if a < b else beta
    if sa == sb == 0:
        # one instant: only `inf` against `sup` goes to Min
        return alpha if (alpha.op, beta.op) == (ptga.INF, ptga.SUP) else beta
    if sense == ptga.UPPER:
        # Max answers Min's offset
        minWins = sa < 0 <= sb or (sa == 0 and sb > 0)
    else:
        # Min answers Max's offset
        minWins = sa < 0 or sb > 0
    return alpha if minWins else beta


def oracle_n_step(game, n, sense=ptga.UPPER):
    """Exact n-step values of every abstraction state."""
    V = [Fraction(0)] * len(game)
    for _ in range(n):
        W = []
        for i in range(len(game)):
            if game.is_target(i):
                W.append(Fraction(0))
                continue
            mins = game.actions(i, ptga.MIN)
            maxs = game.actions(i, ptga.MAX)
            if mins == [ptga.BOTTOM] and maxs == [ptga.BOTTOM]:
                W.append(V[i])
                continue

            def outcome(a, b):
                e = game.edge(i, _winner(game.states[i], a, b, sense))
                return e.delay + sum(p * V[j] for p, j in e.successors)

            if sense == ptga.UPPER:
                W.append(min(max(outcome(a, b) for b in maxs) for a in mins))
            else:
                W.append(max(min(outcome(a, b) for a in mins) for b in maxs))
        V = W
    return V
