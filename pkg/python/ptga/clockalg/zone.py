# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import numpy as np

from ..utils import DomainError, UsageError
from .constraint import Atom, ClockConstraint
from .region import Region, region_future, region_sample
from .valuation import ClockSpace, ClockValuation

# Raw DBM entries pack a bound and its strictness into one integer:
# `(b, <)` is `2b` and `(b, <=)` is `2b + 1`.
INFINITY = 2**60
LE_ZERO = 1


def _le(bound):
    return 2 * bound + 1


def _lt(bound):
    return 2 * bound


def _bound(raw):
    return raw >> 1, bool(raw & 1)


def _add(a, b):
    """Entrywise sum of raw bounds; infinite entries stay infinite."""
    total = a + b - ((a | b) & 1)
    return np.where((a >= INFINITY) | (b >= INFINITY), INFINITY, total)


class Zone(object):
    """
    A convex set of valuations as a difference bound matrix over the
    reference clock (row/column 0) and the clocks of `space`. Entry `[i][j]`
    bounds `x_i - x_j`. Instances are kept in canonical (closed) form.
    """

    def __init__(self, space: ClockSpace, dbm, canonical=False):
        self.space = space
        dbm = np.array(dbm, dtype=np.int64)
        self.dbm = dbm if canonical else _close(dbm)
        self.dbm.setflags(write=False)

    @staticmethod
    def universe(space: ClockSpace):
        n = len(space.clocks) + 1
        dbm = np.full((n, n), INFINITY, dtype=np.int64)
        dbm[0, :] = LE_ZERO
        np.fill_diagonal(dbm, LE_ZERO)
        return Zone(space, dbm, canonical=True)

    @staticmethod
    def from_constraint(space: ClockSpace, g: ClockConstraint):
        dbm = np.array(Zone.universe(space).dbm)
        for atom in g.atoms:
            i = space.index(atom.left) + 1
            j = 0 if atom.right is None else space.index(atom.right) + 1
            b = atom.bound
            if atom.relation in ('<', '<=', '='):
                raw = _lt(b) if atom.relation == '<' else _le(b)
                dbm[i, j] = min(dbm[i, j], raw)
            if atom.relation in ('>', '>=', '='):
                raw = _lt(-b) if atom.relation == '>' else _le(-b)
                dbm[j, i] = min(dbm[j, i], raw)
        return Zone(space, dbm)

    @staticmethod
    def from_region(zeta: Region):
        space = zeta.space
        n = len(space.clocks) + 1
        dbm = np.full((n, n), INFINITY, dtype=np.int64)
        np.fill_diagonal(dbm, LE_ZERO)
        for i, k in enumerate(zeta.ints):
            a = i + 1
            if i in zeta.zero:
                dbm[a, 0], dbm[0, a] = _le(k), _le(-k)
            else:
                dbm[a, 0], dbm[0, a] = _lt(k + 1), _lt(-k)
            for j, kj in enumerate(zeta.ints):
                if j == i:
                    continue
                d = k - kj
                ri, rj = zeta.rank(i), zeta.rank(j)
                if ri == rj:
                    dbm[a, j + 1] = _le(d)
                elif ri < rj:
                    dbm[a, j + 1] = _lt(d)
                else:
                    dbm[a, j + 1] = _lt(d + 1)
        return Zone(space, dbm)

    def is_empty(self) -> bool:
        return bool(np.any(np.diag(self.dbm) < LE_ZERO))

    def contains(self, nu: ClockValuation) -> bool:
        if nu.space != self.space:
            raise UsageError('valuation and zone over different clock sets')
        values = (0,) + tuple(nu.values)
        n = len(values)
        for i in range(n):
            for j in range(n):
                raw = int(self.dbm[i, j])
                if raw >= INFINITY:
                    continue
                bound, weak = _bound(raw)
                diff = values[i] - values[j]
                if diff > bound or (diff == bound and not weak):
                    return False
        return True

    def includes(self, other: Zone) -> bool:
        """`other ⊆ self`."""
        if other.is_empty():
            return True
        return bool(np.all(other.dbm <= self.dbm))

    def intersect(self, other: Zone) -> Zone:
        return Zone(self.space, np.minimum(self.dbm, other.dbm))

    def hull(self, other: Zone) -> Zone:
        """Smallest zone containing both operands."""
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        return Zone(self.space, np.maximum(self.dbm, other.dbm))

    def to_constraint(self) -> ClockConstraint:
        clocks = self.space.clocks
        dbm = self.dbm
        if self.is_empty():
            # x < 0 is unsatisfiable and keeps the constraint syntax.
            return ClockConstraint((Atom(clocks[0], None, '<', 0),))
        atoms = []
        for i, c in enumerate(clocks, start=1):
            atoms.extend(_unaryAtoms(c, int(dbm[i, 0]), int(dbm[0, i])))
        for i in range(1, len(clocks) + 1):
            for j in range(i + 1, len(clocks) + 1):
                upper, lower = int(dbm[i, j]), int(dbm[j, i])
                impliedUpper = int(_add(dbm[i, 0], dbm[0, j]))
                impliedLower = int(_add(dbm[j, 0], dbm[0, i]))
                keepUpper = upper < INFINITY and upper != impliedUpper
                keepLower = lower < INFINITY and lower != impliedLower
                name = (clocks[i - 1], clocks[j - 1])
                if keepUpper and keepLower and upper & 1 and lower & 1 and \
                        _bound(upper)[0] == -_bound(lower)[0]:
                    atoms.append(Atom(*name, '=', _bound(upper)[0]))
                    continue
                if keepUpper:
                    b, weak = _bound(upper)
                    atoms.append(Atom(*name, '<=' if weak else '<', b))
                if keepLower:
                    b, weak = _bound(lower)
                    atoms.append(Atom(*name, '>=' if weak else '>', -b))
        return ClockConstraint(tuple(atoms))

    def __eq__(self, other):
        return isinstance(other, Zone) and other.space == self.space and \
            np.array_equal(other.dbm, self.dbm)

    def __hash__(self):
        return hash((self.space, self.dbm.tobytes()))

    def __str__(self):
        return str(self.to_constraint())

    def __repr__(self):
        return f'Zone({self})'


def _unaryAtoms(clock, upper, lower):
    if upper < INFINITY and upper & 1 and lower & 1 and \
            _bound(upper)[0] == -_bound(lower)[0]:
        return [Atom(clock, None, '=', _bound(upper)[0])]
    atoms = []
    b, weak = _bound(lower)
    if -b > 0 or not weak:
        atoms.append(Atom(clock, None, '>=' if weak else '>', -b))
    if upper < INFINITY:
        b, weak = _bound(upper)
        atoms.append(Atom(clock, None, '<=' if weak else '<', b))
    return atoms


def _close(dbm):
    """Floyd–Warshall closure of a raw DBM, vectorized per pivot."""
    dbm = np.array(dbm, dtype=np.int64)
    for k in range(dbm.shape[0]):
        via = _add(dbm[:, k:k + 1], dbm[k:k + 1, :])
        np.minimum(dbm, via, out=dbm)
    return dbm


def region_in_zone(zeta: Region, zone: Zone) -> bool:
    """Regions are atoms for K-bounded zones: a sample decides inclusion."""
    return zone.contains(region_sample(zeta))


def zone_between(first: Region, last: Region) -> Zone:
    """
    The zone `[first, last]`: the union of every region on the
    time-successor chain from `first` up to and including `last`.

    Raises `DomainError` unless `last` lies in the future of `first`.
    """
    chain = region_future(first)
    if last not in chain:
        raise DomainError(f'`{last}` is not in the future of `{first}`')
    zone = Zone.from_region(first)
    for zeta in chain[1:chain.index(last) + 1]:
        zone = zone.hull(Zone.from_region(zeta))
    return zone
