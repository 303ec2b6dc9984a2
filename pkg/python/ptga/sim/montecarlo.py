# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..bra.abstraction import Bottom
from ..model import Ptga
from ..utils import UsageError
from .semantics import Adapter, Configuration, Play, concrete_step

logger = logging.getLogger(__name__)

_SCALE = 2**64


@dataclass(frozen=True)
class SimulationResult(object):
    """
    `mean` and `stderr` are taken over the `hits` runs that reached a
    target within the horizon; both are `None` without hits.
    """
    mean: Optional[float]
    stderr: Optional[float]
    hits: int
    runs: int
    seed: int
    epsilon_shift: Optional[Fraction] = None

    @property
    def hit_fraction(self) -> float:
        return self.hits / self.runs


def _branch(distribution, u: int):
    """The branch selected by the 64-bit uniform `u`, comparing against the
    exact cumulative probabilities."""
    cumulative = Fraction(0)
    for p, succ in distribution:
        cumulative += p
        if u < cumulative * _SCALE:
            return succ
    return distribution[-1][1]


def sample_play(model: Ptga, mu: Adapter, chi: Adapter, init: Configuration,
                horizon, rng: np.random.Generator):
    """
    One play of at most `horizon` rounds. Returns the play, whether it
    reached a target, and its accumulated time.
    """
    play, time = Play(init), Fraction(0)
    config = init
    for _ in range(horizon):
        if model.is_target(config.location):
            break
        m, x = mu(config), chi(config)
        if isinstance(m, Bottom) and isinstance(x, Bottom):
            break
        outcome = concrete_step(model, config, m, x)
        u = int(rng.integers(0, _SCALE, dtype=np.uint64, endpoint=False))
        succ = _branch(outcome.distribution, u)
        time += outcome.move.delay
        play = play.extend(m, x, succ)
        config = succ
    return play, model.is_target(config.location), time


def simulate_expected_time(model: Ptga,
                           mu: Adapter,
                           chi: Adapter,
                           init: Configuration,
                           runs,
                           horizon,
                           seed=0) -> SimulationResult:
    """
    Monte Carlo estimate of the expected time to reach a target when Min
    plays `mu` and Max plays `chi`.

    Run `k` draws from its own generator spawned off
    `numpy.random.SeedSequence(seed)`, so results do not depend on the
    order the runs are evaluated in. Runs that do not reach a target within
    `horizon` rounds are counted in `runs` but not in `hits`.
    """
    if runs < 1 or horizon < 1:
        raise UsageError('runs and horizon must be at least 1')
    children = np.random.SeedSequence(seed).spawn(runs)
    times = []
    for k, child in enumerate(children):
        _, hit, time = sample_play(model, mu, chi, init, horizon,
                                   np.random.default_rng(child))
        if hit:
            times.append(float(time))
        if (k + 1) % 10000 == 0:
            logger.info('simulated %d of %d runs', k + 1, runs)
    shift = getattr(mu, 'epsilon_shift', None)
    if not times:
        logger.warning('no run reached a target within %d rounds', horizon)
        return SimulationResult(None, None, 0, runs, seed, shift)
    samples = np.array(times, dtype=np.float64)
    stderr = float(np.std(samples, ddof=1) / math.sqrt(len(samples))) \
        if len(samples) > 1 else 0.0
    return SimulationResult(float(np.mean(samples)), stderr, len(samples),
                            runs, seed, shift)
