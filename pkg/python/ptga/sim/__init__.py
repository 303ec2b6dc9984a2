# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from ..bra.abstraction import BOTTOM
from .semantics import (Configuration, TimedMove, Move, Adapter, StepOutcome,
                        Play, is_available, concrete_step, play_measure,
                        enumerate_plays)
from .adapter import ConcreteAdapter, bra_strategy_to_concrete
from .montecarlo import SimulationResult, sample_play, simulate_expected_time
