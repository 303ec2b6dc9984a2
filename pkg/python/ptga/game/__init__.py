# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .graph import (FIRST, RESPONDER, CHANCE, KINDS, Choice, Layer,
                    TurnBasedGame, ValueVector, PositionalStrategy)
from .qualitative import (almost_sure_region, almost_sure_strategy,
                          infinite_value_states)
from .exact import evaluate_strategy_pair, best_response, strategy_improvement
from .iteration import (Solution, bellman_step, n_step_values,
                        greedy_strategies, solve)
from .threshold import AT_MOST, GREATER, UNDECIDED, Decision, decide_threshold
