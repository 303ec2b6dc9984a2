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
from typing import List, Tuple, Union

from ..clockalg import (ClockValuation, Region, delay_bounds, is_thin,
                        region_future, region_of, region_precedes,
                        region_reset)
from ..model import MAX, MIN, Ptga
from ..utils import DomainError, UsageError

INF = 'inf'
SUP = 'sup'

# Which player commits first in the turn-based reduction.
UPPER = 'upper'
LOWER = 'lower'
SENSES = (UPPER, LOWER)


@dataclass(frozen=True)
class BraState(object):
    """`(location, valuation, region)` with the valuation in the closure of
    the region."""
    location: str
    valuation: ClockValuation
    region: Region

    @staticmethod
    def embed(location, nu: ClockValuation) -> BraState:
        """The state `(location, nu, [nu])` of a concrete configuration."""
        return BraState(location, nu, region_of(nu))

    def __str__(self):
        return f'({self.location}, {self.valuation}, {self.region})'


@dataclass(frozen=True)
class BraAction(object):
    """Play `action` on the `op` boundary of `region`."""
    action: str
    region: Region
    op: str

    def __post_init__(self):
        if self.op not in (INF, SUP):
            raise UsageError(f'unknown boundary operator `{self.op}`')

    def label(self):
        return f'{self.action}[{self.region}]{self.op}'

    def __str__(self):
        return f'({self.action}, {self.region}, {self.op})'


@dataclass(frozen=True)
class Bottom(object):
    """The idle move of a player with no available action."""

    def label(self):
        return '⊥'

    def __str__(self):
        return '⊥'


BOTTOM = Bottom()

Move = Union[BraAction, Bottom]


def _reachableTargets(model: Ptga, s: BraState):
    """Regions `ζ''` in the future of `s.region` with `[ζ, ζ''] ⊆ inv`."""
    for zeta in region_future(s.region):
        if not model.region_in_invariant(s.location, zeta):
            break
        yield zeta


def enabled_bra_actions(model: Ptga,
                        s: BraState) -> Tuple[List[Move], List[Move]]:
    """
    Every `(a, ζ'', op)` of Min and of Max enabled in `s`: `ζ''` lies in the
    future of the state's region, the zone between them stays inside the
    invariant, and `a` is available in `ζ''`. A player without any such
    action gets `[BOTTOM]`.
    """
    moves = {MIN: [], MAX: []}
    targets = list(_reachableTargets(model, s))
    for edge in model.edges_from(s.location):
        for zeta in targets:
            if model.available_in_region(edge, zeta):
                for op in (INF, SUP):
                    moves[edge.player].append(BraAction(edge.action, zeta, op))
    return (moves[MIN] or [BOTTOM]), (moves[MAX] or [BOTTOM])


def is_enabled(model: Ptga, s: BraState, alpha: Move) -> bool:
    if isinstance(alpha, Bottom):
        return False
    edge = model.edge(s.location, alpha.action)
    return alpha.region in set(_reachableTargets(model, s)) and \
        model.available_in_region(edge, alpha.region)


def bra_delay(s: BraState, alpha: BraAction) -> Fraction:
    """
    The delay `op { t : ν + t ∈ ζ'' }` realized by `alpha` in `s`.

    Raises `DomainError` if `alpha`'s region is not in the future of the
    state's region.
    """
    if isinstance(alpha, Bottom) or \
            alpha.region not in region_future(s.region):
        raise DomainError(f'{alpha} is not enabled in {s}')
    tInf, tSup = delay_bounds(s.valuation, alpha.region, s.region)
    return tInf if alpha.op == INF else tSup


def bra_successors(model: Ptga, s: BraState,
                   alpha: BraAction) -> List[Tuple[Fraction, BraState]]:
    """
    The distribution reached by playing `alpha` in `s`. The clocks first
    move to the boundary valuation `ν'' = ν + bra_delay(s, alpha)`, then each
    branch `(p, C, ℓ')` of the edge leads to `(ℓ', ν''_C, ζ''_C)`. Branches
    reaching the same state are merged.
    """
    if not is_enabled(model, s, alpha):
        raise DomainError(f'{alpha} is not enabled in {s}')
    return _successors(model, s, alpha)


def _successors(model, s, alpha):
    moved = s.valuation.elapse(bra_delay(s, alpha))
    merged = {}
    for branch in model.edge(s.location, alpha.action).branches:
        succ = BraState(branch.target, moved.reset(branch.resets),
                        region_reset(alpha.region, branch.resets))
        merged[succ] = merged.get(succ, Fraction(0)) + branch.probability
    return [(p, succ) for succ, p in merged.items()]


def bra_winner(alpha: Move, beta: Move, sense=UPPER) -> Move:
    """
    Decide which of Min's `alpha` and Max's `beta` is performed.

    In the upper sense Min's action wins iff its region strictly precedes
    Max's, or both target the same region with Min on the `inf` boundary and
    Max on the `sup` boundary; ties go to Max. In the lower sense Max
    commits first, so within one thick region Min wins unless it plays `sup`
    against Max's `inf`; thin regions and distinct regions are decided as
    in the upper sense.

    Raises `DomainError` when both moves are `BOTTOM`.
    """
    if sense not in SENSES:
        raise UsageError(f'unknown sense `{sense}`')
    if isinstance(alpha, Bottom) and isinstance(beta, Bottom):
        raise DomainError('both players are idle')
    if isinstance(alpha, Bottom):
        return beta
    if isinstance(beta, Bottom):
        return alpha
    if alpha.region != beta.region:
        return alpha if region_precedes(alpha.region, beta.region) else beta
    if sense == LOWER and not is_thin(alpha.region):
        return beta if (alpha.op, beta.op) == (SUP, INF) else alpha
    return alpha if (alpha.op, beta.op) == (INF, SUP) else beta
