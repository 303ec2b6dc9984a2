# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from fractions import Fraction

from .utils import UsageError, parse_number

# Environment variables recognized by the solver. Command-line flags
# override them.
STATE_CAP_VAR = 'PTGA_STATE_CAP'
EPSILON_VAR = 'PTGA_EPSILON'
MAX_ITERATIONS_VAR = 'PTGA_MAX_ITERATIONS'
EPSILON_SHIFT_VAR = 'PTGA_EPSILON_SHIFT'
LOG_LEVEL_VAR = 'PTGA_LOG_LEVEL'


@dataclass(frozen=True)
class Settings(object):
    state_cap: int = 10**6
    epsilon: float = 1e-9
    max_iterations: int = 10**6
    epsilon_shift: Fraction = Fraction(1, 2**20)
    log_level: str = 'WARNING'

    def replace(self, **overrides) -> Settings:
        """Return a copy with every non-`None` override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)


def _read(name, convert, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return convert(raw)
    except (ValueError, UsageError) as error:
        raise UsageError(f'invalid value for {name}: {raw!r}') from error


def _positiveInt(raw):
    value = int(raw)
    if value <= 0:
        raise ValueError(raw)
    return value


def _positiveFloat(raw):
    value = float(raw)
    if not value > 0:
        raise ValueError(raw)
    return value


def _positiveFraction(raw):
    value = parse_number(raw)
    if value <= 0:
        raise ValueError(raw)
    return value


def get_settings() -> Settings:
    """
    Read the solver settings from the environment. Unset variables fall
    back to the defaults of :class:`Settings`.
    """
    defaults = Settings()
    return Settings(
        state_cap=_read(STATE_CAP_VAR, _positiveInt, defaults.state_cap),
        epsilon=_read(EPSILON_VAR, _positiveFloat, defaults.epsilon),
        max_iterations=_read(MAX_ITERATIONS_VAR, _positiveInt,
                             defaults.max_iterations),
        epsilon_shift=_read(EPSILON_SHIFT_VAR, _positiveFraction,
                            defaults.epsilon_shift),
        log_level=_read(LOG_LEVEL_VAR, str.upper, defaults.log_level))
