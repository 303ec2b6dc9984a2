# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

from .utils import (PtgaError, UsageError, DomainError, ModelError,
                    ParseError, ResourceError, InternalError, parse_number,
                    format_number, configureLogging)
from .config import Settings, get_settings

# Clocks, regions and zones
from .clockalg import (ClockSpace, ClockValuation, Atom, ClockConstraint,
                       satisfies, Region, region_of, time_successor,
                       region_reset, region_sample, region_contains,
                       region_future, region_precedes, is_thin,
                       enumerate_regions, delay_bounds, Zone, zone_between,
                       region_in_zone, FracSignature, fractional_signature,
                       k_shift, signature_within)

# Arenas
from .model import (MIN, MAX, PLAYERS, opponent, Branch, Edge, Location,
                    InitialState, Ptga, Issue, ValidationReport, validate,
                    NonZenoResult, check_structural_non_zeno)
from .parser import (ModelSource, parse_model, parse_constraint,
                     parse_model_file, serialize_model, write_model)

# Boundary region abstraction
from .bra import (INF, SUP, UPPER, LOWER, SENSES, BraState, BraAction, Bottom,
                  BOTTOM, enabled_bra_actions, is_enabled, bra_delay,
                  bra_successors, bra_winner, BraEdge, BraGame,
                  build_reachable_bra, check_signatures, PROCEED,
                  to_turn_based, bra_to_dict, bra_to_json, bra_to_dot)

# Turn-based games
from .game import (TurnBasedGame, ValueVector, PositionalStrategy, Solution,
                   bellman_step, n_step_values, greedy_strategies, solve,
                   almost_sure_region, almost_sure_strategy,
                   infinite_value_states, evaluate_strategy_pair,
                   best_response, strategy_improvement, AT_MOST, GREATER,
                   UNDECIDED, Decision, decide_threshold)

# Quasi-simple functions
from .qsf import (Const, Lin, Min, Max, Convex, Qsf, combine, eval_qsf,
                  elapse_transform, reset_transform, tree_height, to_prefix,
                  parse_qsf, regional_value_tree)

# Concrete semantics and simulation
from .sim import (Configuration, TimedMove, StepOutcome, Play, is_available,
                  concrete_step, play_measure, enumerate_plays,
                  ConcreteAdapter, bra_strategy_to_concrete, SimulationResult,
                  sample_play, simulate_expected_time)

__version__ = '0.1.0'
