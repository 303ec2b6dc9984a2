# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .tree import (MIN_OP, MAX_OP, CONVEX_OP, OPS, Const, Lin, Min, Max,
                   Convex, SimpleFn, Qsf, combine, eval_qsf, elapse_transform,
                   reset_transform, tree_height, to_prefix, parse_qsf)
from .symbolic import regional_value_tree
