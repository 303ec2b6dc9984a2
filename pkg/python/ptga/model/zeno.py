# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import graphlib
import itertools
import logging
from dataclasses import dataclass
from typing import Tuple

from .automaton import Ptga

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NonZenoResult(object):
    """`witness` lists the `(source, action, target)` steps of a bad cycle."""
    ok: bool
    witness: Tuple[Tuple[str, str, str], ...] = ()

    def __bool__(self):
        return self.ok


def _guardedAtLeastOne(model: Ptga, edge):
    """Clocks whose canonical guard zone forces a value of at least 1."""
    dbm = model.zone(edge.guard).dbm
    # Row 0 bounds `-x`; `-x <= -1` is raw 2 * (-1) + 1 = -1.
    return {
        c for i, c in enumerate(model.clocks, start=1) if int(dbm[0, i]) <= -1
    }


def check_structural_non_zeno(model: Ptga) -> NonZenoResult:
    """
    Check that every cycle through non-target locations resets some clock
    `c` and is guarded by `c >= 1` somewhere on the cycle, so that each
    traversal lets at least one time unit pass. Cycles through a target are
    ignored: accumulated time stops counting there.

    A cycle violates the condition iff for every clock it avoids either
    all edges resetting that clock or all edges guarding it. For every
    choice of which kind to avoid per clock the matching edges are removed
    and the rest is searched for a cycle with `graphlib`.

    Returns:
        :class:`NonZenoResult`: `ok` is `True` when no violating cycle
        exists, otherwise `witness` is one such cycle.
    """
    steps = []
    for edge in model.edges:
        if model.is_target(edge.source):
            continue
        guarded = _guardedAtLeastOne(model, edge)
        for index, branch in enumerate(edge.branches):
            if model.is_target(branch.target):
                continue
            steps.append((edge, index, branch, set(branch.resets), guarded))

    clocks = model.clocks
    for mask in itertools.product((True, False), repeat=len(clocks)):
        # `True`: the cycle avoids resets of that clock, `False`: guards.
        graph = {loc.name: set() for loc in model.locations}
        for edge, index, branch, resets, guarded in steps:
            blocked = any((c in resets) if avoidReset else (c in guarded)
                          for c, avoidReset in zip(clocks, mask))
            if blocked:
                continue
            node = ('step', edge.source, edge.action, index, branch.target)
            graph[node] = {edge.source}
            graph[branch.target].add(node)
        try:
            graphlib.TopologicalSorter(graph).prepare()
        except graphlib.CycleError as error:
            cycle = error.args[1]
            witness = tuple((n[1], n[2], n[4])
                            for n in cycle
                            if isinstance(n, tuple))
            # `CycleError` lists the cycle once with its start repeated.
            seen = []
            for step in witness:
                if step not in seen:
                    seen.append(step)
            logger.info('structural Zeno cycle: %s', seen)
            return NonZenoResult(False, tuple(seen))
    return NonZenoResult(True)
