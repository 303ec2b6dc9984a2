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
from typing import Tuple

from ..utils import UsageError
from .valuation import ClockValuation


def _frac(value: Fraction) -> Fraction:
    return value - math.floor(value)


@dataclass(frozen=True)
class FracSignature(object):
    """Strictly increasing fractional parts `(0, f1, ..., fm)` with `fm < 1`."""
    fracs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.fracs or self.fracs[0] != 0:
            raise UsageError('a fractional signature starts with 0')
        for a, b in zip(self.fracs, self.fracs[1:]):
            if not a < b:
                raise UsageError('fractional signature must be increasing')
        if self.fracs[-1] >= 1:
            raise UsageError('fractional parts must be below 1')

    def __len__(self):
        return len(self.fracs)


def fractional_signature(nu: ClockValuation) -> FracSignature:
    fracs = {Fraction(0)} | {_frac(v) for v in nu.values}
    return FracSignature(tuple(sorted(fracs)))


def k_shift(sig: FracSignature, k: int) -> FracSignature:
    """
    Shift `sig` forward in time until the `k`-th fractional part wraps to
    0: entry `i` becomes `frac(f_{(i+k) mod (m+1)} + 1 - f_k)`.
    """
    m = len(sig.fracs) - 1
    if not 0 <= k <= m:
        raise UsageError(f'shift {k} outside [0, {m}]')
    fk = sig.fracs[k]
    shifted = {_frac(sig.fracs[(i + k) % (m + 1)] + 1 - fk) for i in range(m + 1)}
    return FracSignature(tuple(sorted(shifted)))


def signature_within(sig: FracSignature, base: FracSignature) -> bool:
    """True iff `sig` is a subsequence of some k-shift of `base`."""
    wanted = set(sig.fracs)
    return any(
        wanted <= set(k_shift(base, k).fracs) for k in range(len(base.fracs)))
