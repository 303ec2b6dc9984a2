# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .abstraction import (INF, SUP, UPPER, LOWER, SENSES, BraState, BraAction,
                          Bottom, BOTTOM, enabled_bra_actions, is_enabled,
                          bra_delay, bra_successors, bra_winner)
from .explore import BraEdge, BraGame, build_reachable_bra, check_signatures
from .turn_based import PROCEED, to_turn_based
from .dump import bra_to_dict, bra_to_json, bra_to_dot
