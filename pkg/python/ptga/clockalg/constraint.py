# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from ..utils import UsageError
from .valuation import ClockValuation

RELATIONS = ('<', '<=', '=', '>=', '>')


@dataclass(frozen=True)
class Atom(object):
    """`left - right <relation> bound`, or `left <relation> bound`."""
    left: str
    right: Optional[str]
    relation: str
    bound: int

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise UsageError(f'unknown relation `{self.relation}`')

    @property
    def isDiagonal(self):
        return self.right is not None

    def clocks(self):
        return (self.left,) if self.right is None else (self.left, self.right)

    def holds(self, lhs) -> bool:
        b = self.bound
        return {
            '<': lhs < b,
            '<=': lhs <= b,
            '=': lhs == b,
            '>=': lhs >= b,
            '>': lhs > b
        }[self.relation]

    def __str__(self):
        lhs = self.left if self.right is None else f'{self.left}-{self.right}'
        return f'{lhs}{self.relation}{self.bound}'


@dataclass(frozen=True)
class ClockConstraint(object):
    """A conjunction of atoms. The empty conjunction is `true`."""
    atoms: Tuple[Atom, ...] = ()

    @staticmethod
    def true():
        return ClockConstraint(())

    def clocks(self):
        return {c for atom in self.atoms for c in atom.clocks()}

    def constants(self):
        return [atom.bound for atom in self.atoms]

    def conjoin(self, other: ClockConstraint) -> ClockConstraint:
        return ClockConstraint(self.atoms + other.atoms)

    def __str__(self):
        if not self.atoms:
            return 'true'
        return ' & '.join(str(atom) for atom in self.atoms)

    def to_text(self):
        return str(self)


def satisfies(nu: ClockValuation, g: ClockConstraint) -> bool:
    """
    Return `True` iff every atom of `g` holds under `nu`.

    Args:
        nu (:class:`ClockValuation`): The valuation to substitute.
        g (:class:`ClockConstraint`): The conjunction to check.

    Raises `UsageError` if `g` mentions a clock `nu` does not define.
    """
    known = set(nu.space.clocks)
    for atom in g.atoms:
        for clock in atom.clocks():
            if clock not in known:
                raise UsageError(
                    f'constraint `{g}` mentions clock `{clock}` outside '
                    f'{nu.space.clocks}')
        lhs = nu[atom.left]
        if atom.right is not None:
            lhs = lhs - nu[atom.right]
        if not atom.holds(lhs):
            return False
    return True
