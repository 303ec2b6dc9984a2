# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..model import MAX, MIN
from ..utils import Number, UsageError, parse_number
from .exact import best_response
from .graph import TurnBasedGame
from .iteration import Solution, solve

logger = logging.getLogger(__name__)

AT_MOST = 'AT_MOST'
GREATER = 'GREATER'
UNDECIDED = 'UNDECIDED'


@dataclass(frozen=True)
class Decision(object):
    """`lower <= value <= upper` bracket the node's value; both are exact
    strategy values, `None` when no bound was asked for."""
    verdict: str
    lower: Optional[Number] = None
    upper: Optional[Number] = None


def decide_threshold(g: TurnBasedGame,
                     node,
                     B,
                     epsilon=None,
                     exact=False,
                     solution: Optional[Solution] = None,
                     **kwargs) -> Decision:
    """
    Decide whether the value of `node` is at most `B`.

    In iterative mode the verdict is certified by strategies: the extracted
    Min strategy evaluated against Max's best response bounds the value from
    above, the extracted Max strategy against Min's best response bounds it
    from below. When `B` falls between the two bounds the answer is
    `UNDECIDED`. Exact mode always answers.

    Args:
        g (:class:`TurnBasedGame`): The game, in the sense to decide.
        node (int): A node of `g`; node `i` is the first-mover node of
            abstraction state `i`.
        B: The threshold as a number or exact literal; `None` means no bound.
        epsilon (float): Tolerance of the iterative solve.
        exact (bool): Decide on exact values.
        solution (:class:`Solution`): A solution of `g` to reuse.
        kwargs: Passed on to :func:`solve`.
    """
    if not 0 <= node < len(g):
        raise UsageError(f'node {node} is outside the game')
    if B is None:
        return Decision(AT_MOST)
    B = parse_number(B)
    if solution is None or solution.exact != exact:
        solution = solve(g, epsilon, exact=exact, **kwargs)
    if exact:
        value = solution.values[node]
        return Decision(AT_MOST if value <= B else GREATER, value, value)
    _, againstMin = best_response(g, solution.strategies[MIN], MAX)
    _, againstMax = best_response(g, solution.strategies[MAX], MIN)
    upper, lower = againstMin[node], againstMax[node]
    logger.debug('node %d bracketed by [%s, %s]', node, lower, upper)
    if upper <= B:
        verdict = AT_MOST
    elif lower > B:
        verdict = GREATER
    else:
        verdict = UNDECIDED
    return Decision(verdict, lower, upper)
