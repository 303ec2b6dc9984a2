# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterator, Optional, Tuple

from ..utils import DomainError, UsageError
from .constraint import Atom, ClockConstraint
from .valuation import ClockSpace, ClockValuation


@dataclass(frozen=True)
class Region(object):
    """
    Canonical clock region for the bound K of `space`.

    `ints[i]` is the integer part of clock `i`; `zero` holds the clocks with
    zero fractional part; `blocks` partitions the remaining clocks by
    fractional part, in increasing order. A clock at K has zero fraction.
    """
    space: ClockSpace
    ints: Tuple[int, ...]
    zero: FrozenSet[int]
    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        n = len(self.space.clocks)
        seen = set(self.zero)
        for block in self.blocks:
            if not block or seen & block:
                raise UsageError('malformed region blocks')
            seen |= block
        if seen != set(range(n)) or len(self.ints) != n:
            raise UsageError('region does not cover the clock set')
        for i, k in enumerate(self.ints):
            if k < 0 or k > self.space.bound:
                raise UsageError('region integer part outside [0, K]')
            if k == self.space.bound and i not in self.zero:
                raise UsageError('clock at K must have zero fraction')

    def rank(self, i) -> int:
        """0 for zero-fraction clocks, otherwise 1 + the block position."""
        if i in self.zero:
            return 0
        for position, block in enumerate(self.blocks):
            if i in block:
                return position + 1
        raise UsageError(f'clock index {i} not in region')

    def to_constraint(self) -> ClockConstraint:
        clocks = self.space.clocks
        atoms = []
        for i, c in enumerate(clocks):
            k = self.ints[i]
            if i in self.zero:
                atoms.append(Atom(c, None, '=', k))
            else:
                atoms.append(Atom(c, None, '>', k))
                atoms.append(Atom(c, None, '<', k + 1))
        groups = [sorted(self.zero)] + [sorted(b) for b in self.blocks]
        # Diagonals involving zero-fraction clocks follow from the unary atoms.
        for position, group in enumerate(groups):
            if position == 0:
                continue
            for a, b in zip(group, group[1:]):
                atoms.append(
                    Atom(clocks[a], clocks[b], '=', self.ints[a] - self.ints[b]))
            if position + 1 >= len(groups):
                continue
            a, b = group[-1], groups[position + 1][0]
            d = self.ints[b] - self.ints[a]
            atoms.append(Atom(clocks[b], clocks[a], '>', d))
            atoms.append(Atom(clocks[b], clocks[a], '<', d + 1))
        return ClockConstraint(tuple(atoms))

    def __str__(self):
        return str(self.to_constraint())


def region_of(nu: ClockValuation) -> Region:
    """Return `[nu]`, the canonical region containing `nu`."""
    ints = tuple(math.floor(v) for v in nu.values)
    fracs = [v - k for v, k in zip(nu.values, ints)]
    zero = frozenset(i for i, f in enumerate(fracs) if f == 0)
    levels = sorted({f for f in fracs if f != 0})
    blocks = tuple(
        frozenset(i for i, f in enumerate(fracs) if f == level)
        for level in levels)
    return Region(nu.space, ints, zero, blocks)


def time_successor(zeta: Region) -> Optional[Region]:
    """
    The next region under time elapse, or `None` once some clock has
    reached K (no delay keeps every clock within the bound).

    A chain therefore ends at the first region where any single clock
    equals K, with the other clocks possibly still below it: from
    `x = 2, 0 < y < 1` with K = 2 there is no successor.
    """
    K = zeta.space.bound
    if any(k == K for k in zeta.ints):
        return None
    if zeta.zero:
        return Region(zeta.space, zeta.ints, frozenset(),
                      (zeta.zero,) + zeta.blocks)
    last = zeta.blocks[-1]
    ints = tuple(k + 1 if i in last else k for i, k in enumerate(zeta.ints))
    return Region(zeta.space, ints, last, zeta.blocks[:-1])


@lru_cache(maxsize=None)
def _futureChain(zeta: Region) -> Tuple[Region, ...]:
    chain = [zeta]
    nxt = time_successor(zeta)
    while nxt is not None:
        chain.append(nxt)
        nxt = time_successor(nxt)
    return tuple(chain)


def region_future(zeta: Region) -> Tuple[Region, ...]:
    """The time-successor chain of `zeta`, starting with `zeta` itself."""
    return _futureChain(zeta)


def region_precedes(first: Region, second: Region) -> bool:
    """`first →+ second`: `second` is a strict time successor of `first`."""
    return second in _futureChain(first)[1:]


def region_reset(zeta: Region, clocks) -> Region:
    """Return `zeta_C`, the region of `nu_C` for any `nu` in `zeta`."""
    reset = zeta.space.indices(clocks)
    ints = tuple(0 if i in reset else k for i, k in enumerate(zeta.ints))
    blocks = tuple(b - reset for b in zeta.blocks if b - reset)
    return Region(zeta.space, ints, zeta.zero | reset, blocks)


def region_sample(zeta: Region) -> ClockValuation:
    """A representative valuation; block `k` of `m` gets fraction k/(m+1)."""
    m = len(zeta.blocks)
    values = []
    for i, k in enumerate(zeta.ints):
        r = zeta.rank(i)
        values.append(Fraction(k) + Fraction(r, m + 1))
    return ClockValuation(zeta.space, tuple(values))


def region_contains(zeta: Region, nu: ClockValuation) -> bool:
    return region_of(nu) == zeta


def is_thin(zeta: Region) -> bool:
    """Time cannot stay in a region where some clock is an integer."""
    return bool(zeta.zero)


def _orderedPartitions(items):
    if not items:
        yield ()
        return
    items = tuple(items)
    # Choose the first block, then partition the rest.
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(x for x in items if x not in first)
            for tail in _orderedPartitions(rest):
                yield (frozenset(first),) + tail


def enumerate_regions(space: ClockSpace) -> Iterator[Region]:
    """Every region of `space`, in a deterministic order."""
    n = len(space.clocks)
    K = space.bound
    for ints in itertools.product(range(K + 1), repeat=n):
        atBound = frozenset(i for i in range(n) if ints[i] == K)
        free = [i for i in range(n) if ints[i] < K]
        for size in range(len(free) + 1):
            for zeroed in itertools.combinations(free, size):
                rest = [i for i in free if i not in zeroed]
                for blocks in _orderedPartitions(rest):
                    yield Region(space, ints, atBound | frozenset(zeroed),
                                 blocks)


def delay_bounds(nu: ClockValuation, target: Region, source: Region = None):
    """
    Infimum and supremum of `{t >= 0 : nu + t ∈ target}`.

    `target` must lie in the time-successor chain of `source`, the region
    `nu` belongs to (`[nu]` unless given). A state of the abstraction may
    carry a valuation on the boundary of its region, so both endpoints are
    computed on the closure of `target`: each clock contributes a closed
    interval of admissible delays and the intersection is returned.

    Raises `DomainError` when `target` is not in the future of `source`.

    Returns:
        `(t_inf, t_sup)`: exact `Fraction`s with `nu + t_inf` and
        `nu + t_sup` in the closure of `target`.
    """
    if nu.space != target.space:
        raise UsageError('valuation and region over different clock sets')
    source = region_of(nu) if source is None else source
    if target not in region_future(source):
        raise DomainError(f'region `{target}` is not in the future of '
                          f'`{source}`')
    values = nu.values
    # Differences are invariant under delay; they must fit the closure.
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            d = target.ints[i] - target.ints[j]
            ri, rj = target.rank(i), target.rank(j)
            lo, hi = (d, d) if ri == rj else ((d - 1, d) if ri < rj else
                                              (d, d + 1))
            diff = values[i] - values[j]
            if diff < lo or diff > hi:
                raise DomainError(f'region `{target}` is not reachable from '
                                  f'{nu} by delay')
    lows, highs = [], []
    for i, v in enumerate(values):
        k = target.ints[i]
        lows.append(k - v)
        highs.append(k - v if i in target.zero else k + 1 - v)
    tInf = max([Fraction(0)] + lows)
    tSup = min(highs) if highs else Fraction(target.space.bound)
    if tSup < tInf:
        raise DomainError(f'empty delay set from {nu} to `{target}`')
    return tInf, tSup
