# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Optional, Tuple, Union

import numpy as np

from ..model import MAX, MIN
from ..utils import UsageError, format_decimal, format_number

FIRST = 'first'
RESPONDER = 'responder'
CHANCE = 'chance'
KINDS = (FIRST, RESPONDER, CHANCE)


@dataclass(frozen=True)
class Choice(object):
    label: str
    target: int


@dataclass(frozen=True)
class Layer(object):
    """CSR view of one node kind: `nodes[k]` owns entries
    `ptr[k]:ptr[k+1]` of `target` (and `weight` for chance nodes)."""
    nodes: np.ndarray
    ptr: np.ndarray
    target: np.ndarray
    weight: Optional[np.ndarray] = None
    delay: Optional[np.ndarray] = None
    is_min: Optional[np.ndarray] = None


@dataclass(frozen=True)
class TurnBasedGame(object):
    """
    A finite turn-based stochastic game. Every round a first-mover node
    picks a responder node, the responder picks a chance node, and the
    chance node pays its delay and moves to first-mover nodes. `owners`
    holds the player of each decision node; chance nodes have `None`.
    `states[v]` is the abstraction state node `v` was built from and
    `first_nodes[i]` the first-mover node of state `i`.
    """
    sense: str
    kinds: Tuple[str, ...]
    owners: Tuple[Optional[str], ...]
    states: Tuple[int, ...]
    choices: Tuple[Tuple[Choice, ...], ...]
    delays: Tuple[Fraction, ...]
    outcomes: Tuple[Tuple[Tuple[Fraction, int], ...], ...]
    targets: frozenset
    first_nodes: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.kinds)
        for column in (self.owners, self.states, self.choices, self.delays,
                       self.outcomes):
            if len(column) != n:
                raise UsageError('node arrays have different lengths')
        for v, kind in enumerate(self.kinds):
            if kind == CHANCE:
                if sum(p for p, _ in self.outcomes[v]) != 1:
                    raise UsageError(f'chance node {v} is not stochastic')
                if self.delays[v] < 0:
                    raise UsageError(f'chance node {v} has a negative delay')
            elif not self.choices[v]:
                raise UsageError(f'{kind} node {v} has no choice')

    def __len__(self):
        return len(self.kinds)

    @property
    def first_player(self):
        return self.owners[self.first_nodes[0]]

    def is_target(self, v) -> bool:
        return v in self.targets

    def successors(self, v):
        if self.kinds[v] == CHANCE:
            return [j for _, j in self.outcomes[v]]
        return [c.target for c in self.choices[v]]

    def nodes_of(self, kind):
        return [v for v, k in enumerate(self.kinds) if k == kind]

    def owned_by(self, player):
        return [v for v, o in enumerate(self.owners) if o == player]

    @cached_property
    def predecessors(self):
        """`predecessors[v]` lists `(u, position)` for every edge `u -> v`."""
        preds = [[] for _ in self.kinds]
        for u in range(len(self.kinds)):
            if self.kinds[u] == CHANCE:
                for position, (_, j) in enumerate(self.outcomes[u]):
                    preds[j].append((u, position))
            else:
                for position, c in enumerate(self.choices[u]):
                    preds[c.target].append((u, position))
        return preds

    def _decisionLayer(self, kind):
        nodes = self.nodes_of(kind)
        ptr, target = [0], []
        for v in nodes:
            target.extend(c.target for c in self.choices[v])
            ptr.append(len(target))
        return Layer(np.array(nodes, dtype=np.int64),
                     np.array(ptr, dtype=np.int64),
                     np.array(target, dtype=np.int64),
                     is_min=np.array([self.owners[v] == MIN for v in nodes],
                                    dtype=bool))

    @cached_property
    def layers(self) -> Dict[str, Layer]:
        chance = self.nodes_of(CHANCE)
        ptr, target, weight = [0], [], []
        for v in chance:
            for p, j in self.outcomes[v]:
                target.append(j)
                weight.append(float(p))
            ptr.append(len(target))
        return {
            CHANCE:
                Layer(np.array(chance, dtype=np.int64),
                      np.array(ptr, dtype=np.int64),
                      np.array(target, dtype=np.int64),
                      weight=np.array(weight, dtype=np.float64),
                      delay=np.array([float(self.delays[v]) for v in chance],
                                     dtype=np.float64)),
            RESPONDER:
                self._decisionLayer(RESPONDER),
            FIRST:
                self._decisionLayer(FIRST)
        }

    @cached_property
    def target_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.kinds), dtype=bool)
        mask[list(self.targets)] = True
        return mask

    def describe(self, v) -> str:
        return f'{self.kinds[v]} node {v} of state {self.states[v]}'


Number = Union[Fraction, float]


@dataclass(frozen=True, eq=False)
class ValueVector(object):
    """
    One value per node. Iterative results hold a float `numpy` vector;
    exact results a tuple of `Fraction`s with `math.inf` for unbounded
    values.
    """
    values: Union[np.ndarray, Tuple[Number, ...]]
    exact: bool = False

    @staticmethod
    def zeros(size, exact=False) -> ValueVector:
        if exact:
            return ValueVector(tuple(Fraction(0) for _ in range(size)), True)
        return ValueVector(np.zeros(size, dtype=np.float64), False)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, v):
        value = self.values[v]
        return float(value) if isinstance(value, np.floating) else value

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.values], dtype=np.float64)

    def is_infinite(self, v) -> bool:
        return math.isinf(self[v])

    def render(self, v) -> Dict[str, str]:
        value = self[v]
        out = {'decimal': format_decimal(value)}
        if self.exact:
            out['exact'] = format_number(value)
        return out


@dataclass(frozen=True)
class PositionalStrategy(object):
    """`choices[v]` is the position of the choice taken at node `v`."""
    player: str
    choices: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.player not in (MIN, MAX):
            raise UsageError(f'unknown player `{self.player}`')

    @staticmethod
    def of(player, mapping) -> PositionalStrategy:
        return PositionalStrategy(player, tuple(sorted(mapping.items())))

    @cached_property
    def _table(self) -> Dict[int, int]:
        return dict(self.choices)

    def __contains__(self, v):
        return v in self._table

    def choice(self, v) -> int:
        try:
            return self._table[v]
        except KeyError:
            raise UsageError(f'strategy of {self.player} does not cover '
                             f'node {v}') from None

    def target(self, g: TurnBasedGame, v) -> int:
        return g.choices[v][self.choice(v)].target

    def label(self, g: TurnBasedGame, v) -> str:
        return g.choices[v][self.choice(v)].label

    def as_dict(self) -> Dict[int, int]:
        return dict(self._table)
