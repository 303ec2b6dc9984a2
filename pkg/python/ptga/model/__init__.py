# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .automaton import (MIN, MAX, PLAYERS, opponent, Branch, Edge, Location,
                        InitialState, Ptga)
from .validate import Issue, ValidationReport, validate
from .zeno import NonZenoResult, check_structural_non_zeno
