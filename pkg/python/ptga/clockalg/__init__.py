# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .valuation import ClockSpace, ClockValuation
from .constraint import Atom, ClockConstraint, satisfies
from .region import (Region, region_of, time_successor, region_reset,
                     region_sample, region_contains, region_future,
                     region_precedes, is_thin, enumerate_regions, delay_bounds)
from .zone import Zone, zone_between, region_in_zone
from .signature import (FracSignature, fractional_signature, k_shift,
                        signature_within)
