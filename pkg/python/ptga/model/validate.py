# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from ..clockalg import (ClockValuation, enumerate_regions, region_future,
                        region_in_zone, region_of, region_reset, satisfies,
                        time_successor)
from ..utils import PtgaError
from .automaton import MAX, MIN, Ptga

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Issue(object):
    code: str
    context: str
    message: str

    def __str__(self):
        where = f' [{self.context}]' if self.context else ''
        return f'{self.code}{where}: {self.message}'

    def to_json(self):
        return {
            'code': self.code,
            'context': self.context,
            'message': self.message
        }


@dataclass(frozen=True)
class ValidationReport(object):
    errors: Tuple[Issue, ...] = ()
    warnings: Tuple[Issue, ...] = ()

    @property
    def accepted(self) -> bool:
        return not self.errors

    def to_json(self):
        return {
            'accepted': self.accepted,
            'errors': [e.to_json() for e in self.errors],
            'warnings': [w.to_json() for w in self.warnings]
        }


@dataclass
class _Collector(object):
    errors: List[Issue] = field(default_factory=list)
    warnings: List[Issue] = field(default_factory=list)

    def error(self, code, context, message):
        self.errors.append(Issue(code, context, message))

    def warn(self, code, context, message):
        self.warnings.append(Issue(code, context, message))


def _checkConstraint(model, g, context, out):
    K = model.bound
    for atom in g.atoms:
        for clock in atom.clocks():
            if clock not in model.clocks:
                out.error('unknown-clock', context,
                          f'clock `{clock}` is not declared')
        low = -K if atom.isDiagonal else 0
        if not low <= atom.bound <= K:
            out.error('bound-exceeded', context,
                      f'constant {atom.bound} in `{atom}` outside '
                      f'[{low}, {K}]')


def _checkStructure(model: Ptga, out: _Collector):
    names = [loc.name for loc in model.locations]
    for name, count in Counter(names).items():
        if count > 1:
            out.error('duplicate-identifier', name,
                      f'location `{name}` declared {count} times')
    for player, actions in ((MIN, model.actions_min), (MAX,
                                                       model.actions_max)):
        for action, count in Counter(actions).items():
            if count > 1:
                out.error('duplicate-identifier', action,
                          f'{player} action `{action}` declared {count} times')
    for action in sorted(set(model.actions_min) & set(model.actions_max)):
        out.error('player-action-overlap', action,
                  f'action `{action}` belongs to both players')
    if not model.locations:
        out.error('unknown-location', '', 'model declares no location')

    for loc in model.locations:
        _checkConstraint(model, loc.invariant, f'inv {loc.name}', out)

    seen = Counter((e.source, e.action) for e in model.edges)
    for (source, action), count in seen.items():
        if count > 1:
            out.error('duplicate-identifier', f'{action}@{source}',
                      f'action `{action}` has {count} edges from `{source}`')

    for edge in model.edges:
        context = edge.label()
        if not model.has_location(edge.source):
            out.error('unknown-location', context,
                      f'source `{edge.source}` is not declared')
        declared = model.actions_min if edge.player == MIN else model.actions_max
        if edge.action not in declared:
            out.error('unknown-action', context,
                      f'`{edge.action}` is not a {edge.player} action')
        _checkConstraint(model, edge.guard, context, out)
        if not edge.branches:
            out.error('distribution-not-stochastic', context,
                      'edge has no branches')
            continue
        total = Fraction(0)
        for branch in edge.branches:
            total += branch.probability
            if branch.probability <= 0:
                out.error('non-positive-probability', context,
                          f'branch to `{branch.target}` has probability '
                          f'{branch.probability}')
            if not model.has_location(branch.target):
                out.error('unknown-location', context,
                          f'target `{branch.target}` is not declared')
            for clock in branch.resets:
                if clock not in model.clocks:
                    out.error('unknown-clock', context,
                              f'reset of undeclared clock `{clock}`')
        if total != 1:
            out.error('distribution-not-stochastic', context,
                      f'branch probabilities sum to {total}, not 1')

    for target in model.targets:
        if not model.has_location(target):
            out.error('unknown-location', f'target {target}',
                      f'target `{target}` is not declared')
    if not model.targets:
        out.warn('no-targets', '', 'no target location: every value is inf')

    if model.initial is not None:
        init = model.initial
        context = f'init {init.location}'
        if not model.has_location(init.location):
            out.error('initial-invalid', context,
                      f'location `{init.location}` is not declared')
        elif all(c in model.clocks for c, _ in init.assignment):
            try:
                nu = ClockValuation.of(model.space, dict(init.assignment))
            except PtgaError as error:
                out.error('initial-invalid', context, str(error))
            else:
                if not satisfies(nu, model.location(init.location).invariant):
                    out.error('initial-invalid', context,
                              f'{nu} violates the invariant of '
                              f'`{init.location}`')
        else:
            out.error('initial-invalid', context,
                      'initial valuation names an undeclared clock')


def _reachableRegions(model: Ptga):
    """(location, region) pairs of the region graph from the initial state."""
    location, nu = model.initial_configuration()
    start = (location, region_of(nu))
    seen = {start: None}
    queue = deque([start])
    while queue:
        loc, zeta = queue.popleft()
        successors = []
        later = time_successor(zeta)
        if later is not None and model.region_in_invariant(loc, later):
            successors.append((loc, later))
        for edge in model.edges_from(loc):
            if model.available_in_region(edge, zeta):
                successors.extend((b.target, region_reset(zeta, b.resets))
                                  for b in edge.branches)
        for pair in successors:
            if pair not in seen:
                seen[pair] = None
                queue.append(pair)
    return list(seen)


def _checkRegions(model: Ptga, out: _Collector):
    for loc in model.locations:
        if model.invariant_zone(loc.name).is_empty():
            out.warn('empty-invariant', f'inv {loc.name}',
                     f'invariant of `{loc.name}` is unsatisfiable')
    for edge in model.edges:
        if model.zone(edge.guard).is_empty():
            out.warn('empty-guard', edge.label(),
                     f'enabling condition `{edge.guard}` is unsatisfiable')

    regions = list(enumerate_regions(model.space))
    logger.debug('checking %d regions per location', len(regions))
    for edge in model.edges:
        inv = model.invariant_zone(edge.source)
        guard = model.zone(edge.guard)
        for index, branch in enumerate(edge.branches):
            for zeta in regions:
                if not (region_in_zone(zeta, inv) and
                        region_in_zone(zeta, guard)):
                    continue
                landed = region_reset(zeta, branch.resets)
                if not model.region_in_invariant(branch.target, landed):
                    out.warn(
                        'reset-leaves-invariant', edge.label(),
                        f'branch {index} lands in `{landed}` outside the '
                        f'invariant of `{branch.target}` when taken in '
                        f'`{zeta}`; the action is unavailable there')
                    break

    location, nu = model.initial_configuration()
    if not model.region_in_invariant(location, region_of(nu)):
        out.error('initial-invalid', f'init {location}',
                  f'{nu} violates the invariant of `{location}`')
        return
    reachable = _reachableRegions(model)
    logger.debug('%d reachable (location, region) pairs', len(reachable))
    dead = set()
    for loc, zeta in reachable:
        if model.is_target(loc) or loc in dead:
            continue
        edges = model.edges_from(loc)
        live = False
        for later in region_future(zeta):
            if not model.region_in_invariant(loc, later):
                break
            if any(model.available_in_region(e, later) for e in edges):
                live = True
                break
        if not live:
            dead.add(loc)
            out.error(
                'dead-configuration', loc,
                f'no player has an available action from `{zeta}` '
                f'in `{loc}`, reached from the initial configuration; '
                'configurations never reached are not checked')


def validate(model: Ptga) -> ValidationReport:
    """
    Check a parsed model and report every violated requirement. Errors
    make the model unusable by the solver; warnings flag behaviour the
    solver handles but the author may not intend.

    Structural errors stop the region-level checks, which need a
    well-formed model.
    """
    out = _Collector()
    _checkStructure(model, out)
    if not out.errors:
        _checkRegions(model, out)
    return ValidationReport(tuple(out.errors), tuple(out.warnings))
