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

from ..game.graph import CHANCE, FIRST, RESPONDER, Choice, TurnBasedGame
from ..model import MAX, MIN, opponent
from ..utils import UsageError
from .abstraction import BOTTOM, SENSES, UPPER, bra_winner
from .explore import BraGame

logger = logging.getLogger(__name__)

PROCEED = 'proceed'


class _Builder(object):

    def __init__(self):
        self.kinds, self.owners, self.states = [], [], []
        self.choices, self.delays, self.outcomes = [], [], []
        self.chanceOf = {}

    def add(self, kind, owner, state, delay=Fraction(0), outcomes=()):
        self.kinds.append(kind)
        self.owners.append(owner)
        self.states.append(state)
        self.choices.append([])
        self.delays.append(delay)
        self.outcomes.append(tuple(outcomes))
        return len(self.kinds) - 1

    def chance(self, state, edge):
        key = (state, edge.action)
        if key not in self.chanceOf:
            self.chanceOf[key] = self.add(CHANCE, None, state, edge.delay,
                                          edge.successors)
        return self.chanceOf[key]


def _responderOptions(b, i, alphaEdge, replies, first, sense):
    """Outcomes the responder can force against the first mover's choice:
    `proceed` when some reply loses (or there is none), plus every
    winning reply."""
    alpha = alphaEdge.action if alphaEdge is not None else BOTTOM
    options, proceed = [], False
    for betaEdge in replies or [None]:
        beta = betaEdge.action if betaEdge is not None else BOTTOM
        pair = (alpha, beta) if first == MIN else (beta, alpha)
        winner = bra_winner(*pair, sense=sense)
        if betaEdge is not None and winner == beta:
            options.append(Choice(beta.label(), b.chance(i, betaEdge)))
        else:
            proceed = True
    if proceed:
        options.insert(0, Choice(PROCEED, b.chance(i, alphaEdge)))
    return options


def to_turn_based(game: BraGame, sense=UPPER) -> TurnBasedGame:
    """
    Split every simultaneous round of the abstraction into first-mover,
    responder and chance nodes.

    In the upper sense Min commits first and Max responds; the lower sense
    swaps the roles. The responder node of a first-mover choice `α` offers
    `proceed` (perform `α`) if some reply loses to `α` or the responder is
    idle, and each reply `β` that wins against `α`. A chance node carries the
    delay and distribution of the performed action. States where both
    players are idle get a zero-delay self-loop; outside the target set this
    makes their value infinite.

    Node `i` is the first-mover node of abstraction state `i`.
    """
    if sense not in SENSES:
        raise UsageError(f'unknown sense `{sense}`')
    first = MIN if sense == UPPER else MAX
    second = opponent(first)
    b = _Builder()
    n = len(game)
    for i in range(n):
        b.add(FIRST, first, i)
    for i in range(n):
        mine, theirs = game.edges(i, first), game.edges(i, second)
        if not mine and not theirs:
            if not game.is_target(i):
                logger.warning('no player can move in %s', game.states[i])
            loop = b.add(CHANCE, None, i, Fraction(0), ((Fraction(1), i),))
            r = b.add(RESPONDER, second, i)
            b.choices[r].append(Choice(PROCEED, loop))
            b.choices[i].append(Choice(BOTTOM.label(), r))
            continue
        for alphaEdge in (mine or [None]):
            r = b.add(RESPONDER, second, i)
            b.choices[r].extend(
                _responderOptions(b, i, alphaEdge, theirs, first, sense))
            label = alphaEdge.action.label() if alphaEdge is not None \
                else BOTTOM.label()
            b.choices[i].append(Choice(label, r))
    tb = TurnBasedGame(sense=sense,
                       kinds=tuple(b.kinds),
                       owners=tuple(b.owners),
                       states=tuple(b.states),
                       choices=tuple(tuple(c) for c in b.choices),
                       delays=tuple(b.delays),
                       outcomes=tuple(b.outcomes),
                       targets=frozenset(game.targets),
                       first_nodes=tuple(range(n)))
    logger.info('%s turn-based game: %d nodes from %d states', sense, len(tb),
                n)
    return tb
