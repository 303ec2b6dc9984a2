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
from functools import cached_property
from typing import Dict, Optional, Tuple

from ..clockalg import (ClockConstraint, ClockSpace, ClockValuation, Region,
                        Zone, region_in_zone, region_reset)
from ..utils import UsageError

MIN = 'min'
MAX = 'max'
PLAYERS = (MIN, MAX)


def opponent(player):
    return MAX if player == MIN else MIN


@dataclass(frozen=True)
class Branch(object):
    probability: Fraction
    resets: Tuple[str, ...]
    target: str


@dataclass(frozen=True)
class Edge(object):
    """The row `δ[source, action]` together with its enabling condition."""
    player: str
    action: str
    source: str
    guard: ClockConstraint
    branches: Tuple[Branch, ...]

    def label(self):
        return f'{self.action}@{self.source}'


@dataclass(frozen=True)
class Location(object):
    name: str
    invariant: ClockConstraint


@dataclass(frozen=True)
class InitialState(object):
    location: str
    assignment: Tuple[Tuple[str, Fraction], ...] = ()


@dataclass(frozen=True)
class Ptga(object):
    """
    A probabilistic timed game arena: locations with invariants, the clock
    space with its bound K, disjoint action sets of Min and Max, one `Edge`
    per (location, action) carrying the enabling condition and the
    distribution over (resets, target), and the target locations.
    """
    space: ClockSpace
    locations: Tuple[Location, ...]
    actions_min: Tuple[str, ...]
    actions_max: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    targets: Tuple[str, ...]
    initial: Optional[InitialState] = None
    name: Optional[str] = None

    @property
    def clocks(self):
        return self.space.clocks

    @property
    def bound(self):
        return self.space.bound

    @cached_property
    def _locationIndex(self) -> Dict[str, Location]:
        return {loc.name: loc for loc in self.locations}

    @cached_property
    def _edgeIndex(self):
        return {(e.source, e.action): e for e in self.edges}

    @cached_property
    def _zones(self):
        return {}

    @cached_property
    def _availability(self):
        return {}

    def location(self, name) -> Location:
        try:
            return self._locationIndex[name]
        except KeyError:
            raise UsageError(f'unknown location `{name}`') from None

    def has_location(self, name) -> bool:
        return name in self._locationIndex

    def is_target(self, name) -> bool:
        return name in self.targets

    def owner(self, action) -> str:
        if action in self.actions_min:
            return MIN
        if action in self.actions_max:
            return MAX
        raise UsageError(f'unknown action `{action}`')

    def edge(self, source, action) -> Edge:
        try:
            return self._edgeIndex[(source, action)]
        except KeyError:
            raise UsageError(
                f'no action `{action}` at location `{source}`') from None

    def edges_from(self, source, player=None):
        return [
            e for e in self.edges
            if e.source == source and (player is None or e.player == player)
        ]

    def zone(self, g: ClockConstraint) -> Zone:
        zones = self._zones
        if g not in zones:
            zones[g] = Zone.from_constraint(self.space, g)
        return zones[g]

    def invariant_zone(self, name) -> Zone:
        return self.zone(self.location(name).invariant)

    def region_in_invariant(self, name, zeta: Region) -> bool:
        return region_in_zone(zeta, self.invariant_zone(name))

    def available_in_region(self, edge: Edge, zeta: Region) -> bool:
        """
        An action is available in region `zeta` when `zeta` satisfies the
        invariant and the enabling condition, and every branch lands
        inside the invariant of its target.
        """
        key = (edge.source, edge.action, zeta)
        cache = self._availability
        if key not in cache:
            ok = self.region_in_invariant(edge.source, zeta) and \
                region_in_zone(zeta, self.zone(edge.guard))
            if ok:
                ok = all(
                    self.region_in_invariant(b.target,
                                             region_reset(zeta, b.resets))
                    for b in edge.branches)
            cache[key] = ok
        return cache[key]

    def initial_configuration(self):
        """
        The declared initial state, or all-zero clocks at the first
        declared location.
        """
        if self.initial is None:
            return self.locations[0].name, ClockValuation.zero(self.space)
        return self.initial.location, ClockValuation.of(
            self.space, dict(self.initial.assignment))
