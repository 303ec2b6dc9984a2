# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from .bra import (SENSES, UPPER, bra_to_dict, bra_to_dot, build_reachable_bra,
                  check_signatures, to_turn_based)
from .config import get_settings
from .game import AT_MOST, GREATER, decide_threshold, solve
from .model import MAX, MIN, check_structural_non_zeno, validate
from .parser import parse_model_file
from .sim import Configuration, bra_strategy_to_concrete, simulate_expected_time
from .utils import (ModelError, PtgaError, UsageError, configureLogging,
                    emitError, emitWarning, format_decimal, format_number,
                    parse_number)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
COMMANDS = ('validate', 'bra', 'solve', 'decide', 'simulate')

EXIT_OK = 0
EXIT_GREATER = 1
EXIT_ERROR = 2
EXIT_UNDECIDED = 3


@dataclass(frozen=True)
class CommandRequest(object):
    command: str
    model: str
    init: Optional[str] = None
    sense: str = UPPER
    epsilon: Optional[float] = None
    exact: bool = False
    bound: Optional[str] = None
    runs: int = 10000
    horizon: int = 1000
    seed: int = 0
    epsilon_shift: Optional[str] = None
    state_cap: Optional[int] = None
    allow_zeno: bool = False
    output: Optional[str] = None
    dot: Optional[str] = None
    verbose: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f'unknown command `{self.command}`')
        if self.sense not in SENSES:
            raise UsageError(f'unknown sense `{self.sense}`')
        if self.dot is not None and self.command != 'bra':
            raise UsageError('--dot only applies to `bra`')
        if self.command == 'simulate' and (self.runs < 1 or self.horizon < 1):
            raise UsageError('--runs and --horizon must be at least 1')


def parse_init(model, text):
    """
    `"l0 x=0 y=1/2"` (commas optional) to a location and clock assignment;
    clocks left out are 0. `None` gives the model's initial configuration.
    """
    if text is None:
        location, nu = model.initial_configuration()
        return Configuration(location, nu)
    words = text.replace(',', ' ').split()
    if not words:
        raise UsageError('empty --init')
    assignment = {}
    for word in words[1:]:
        clock, sep, value = word.partition('=')
        if not sep or not clock:
            raise UsageError(f'expected clock=value in --init, got `{word}`')
        assignment[clock] = parse_number(value)
    if not model.has_location(words[0]):
        raise UsageError(f'unknown location `{words[0]}` in --init')
    return Configuration.of(model, words[0], assignment)


def _emit(request: CommandRequest, payload):
    text = json.dumps(dict(payload, schema=SCHEMA_VERSION),
                      indent=2,
                      sort_keys=True) + '\n'
    if request.output is None:
        sys.stdout.write(text)
    else:
        with open(request.output, 'w', encoding='utf-8') as handle:
            handle.write(text)


def _report(report):
    for issue in report.errors:
        emitError(issue)
    for issue in report.warnings:
        emitWarning(issue)


def _number(value):
    return {'decimal': format_decimal(value), 'exact': format_number(value)}


def _validate(request, model):
    report = validate(model)
    nonZeno = check_structural_non_zeno(model)
    _report(report)
    _emit(
        request,
        dict(report.to_json(),
             non_zeno={
                 'ok': nonZeno.ok,
                 'witness': [list(step) for step in nonZeno.witness]
             }))
    return EXIT_OK if report.accepted else EXIT_ERROR


def _explore(request, model):
    """Validate, check non-Zenoness and build the abstraction."""
    report = validate(model)
    _report(report)
    if not report.accepted:
        return None, None
    nonZeno = check_structural_non_zeno(model)
    if not nonZeno.ok:
        message = 'the arena is not structurally non-Zeno'
        if not request.allow_zeno:
            raise ModelError(message + ' (pass --allow-zeno to proceed)')
        emitWarning(message)
    init = parse_init(model, request.init)
    game = build_reachable_bra(model, (init.location, init.valuation),
                               request.state_cap)
    if not check_signatures(game):
        emitWarning('fractional signatures escape the initial one')
    return game, nonZeno.ok


def _strategyLabels(g, solution, i):
    first = g.first_player
    second = MAX if first == MIN else MIN
    firstStrategy = solution.strategies[first]
    responder = firstStrategy.target(g, i)
    return {
        first: firstStrategy.label(g, i),
        second: solution.strategies[second].label(g, responder)
    }


def _solve(request, game, nonZeno):
    g = to_turn_based(game, request.sense)
    solution = solve(g,
                     request.epsilon,
                     exact=request.exact,
                     allow_zeno=request.allow_zeno,
                     model_non_zeno=nonZeno)
    return g, solution


def run(request: CommandRequest) -> int:
    """
    Execute one command. JSON goes to standard output (or `--output`),
    diagnostics to standard error.

    Returns:
        The exit code: 0 on success, 2 on errors or a rejected model; for
        `decide` 0 means AT_MOST, 1 GREATER and 3 UNDECIDED.
    """
    try:
        model = parse_model_file(request.model)
        if request.command == 'validate':
            return _validate(request, model)
        game, nonZeno = _explore(request, model)
        if game is None:
            return EXIT_ERROR
        if request.command == 'bra':
            _emit(request, bra_to_dict(game))
            if request.dot is not None:
                with open(request.dot, 'w', encoding='utf-8') as handle:
                    handle.write(bra_to_dot(game))
            return EXIT_OK
        g, solution = _solve(request, game, nonZeno)
        if request.command == 'solve':
            states = []
            for i, s in enumerate(game.states):
                states.append({
                    'index': i,
                    'location': s.location,
                    'valuation': {
                        c: format_number(v) for c, v in s.valuation.items()
                    },
                    'region': str(s.region),
                    'value': solution.values.render(i),
                    'strategy': _strategyLabels(g, solution, i)
                })
            _emit(
                request, {
                    'sense': request.sense,
                    'exact': solution.exact,
                    'iterations': solution.iterations,
                    'residual': format_decimal(solution.residual),
                    'initial': 0,
                    'states': states
                })
            return EXIT_OK
        if request.command == 'decide':
            bound = None if request.bound in (None, 'inf') else \
                parse_number(request.bound)
            decision = decide_threshold(g,
                                        0,
                                        bound,
                                        request.epsilon,
                                        exact=request.exact,
                                        solution=solution)
            _emit(
                request, {
                    'verdict': decision.verdict,
                    'bound': 'inf' if bound is None else format_number(bound),
                    'lower': None if decision.lower is None else
                             _number(decision.lower),
                    'upper': None if decision.upper is None else
                             _number(decision.upper)
                })
            return {
                AT_MOST: EXIT_OK,
                GREATER: EXIT_GREATER
            }.get(decision.verdict, EXIT_UNDECIDED)
        adapters = [
            bra_strategy_to_concrete(model, game, g, solution.strategies,
                                     player, request.epsilon_shift)
            for player in (MIN, MAX)
        ]
        init = parse_init(model, request.init)
        result = simulate_expected_time(model, *adapters, init, request.runs,
                                        request.horizon, request.seed)
        _emit(
            request, {
                'mean': result.mean,
                'stderr': result.stderr,
                'hits': result.hits,
                'runs': result.runs,
                'seed': result.seed,
                'epsilon_shift': format_number(result.epsilon_shift)
            })
        return EXIT_OK
    except PtgaError as error:
        emitError(error)
        return EXIT_ERROR
    except OSError as error:
        emitError(error)
        return EXIT_ERROR


def _buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ptga',
        description='Expected reachability-time games on probabilistic '
        'timed game arenas.')
    commands = parser.add_subparsers(dest='command', required=True)
    summaries = {
        'validate': 'check a model and report problems',
        'bra': 'build the boundary region abstraction',
        'solve': 'compute values and strategies',
        'decide': 'decide whether the value is at most a bound',
        'simulate': 'estimate the expected time by simulation'
    }
    for name in COMMANDS:
        sub = commands.add_parser(name, help=summaries[name])
        sub.add_argument('model', help='path of the .ptga model')
        sub.add_argument('-o', '--output', help='write JSON here')
        sub.add_argument('-v',
                         '--verbose',
                         action='count',
                         default=0,
                         help='more logging (repeatable)')
        if name == 'validate':
            continue
        sub.add_argument('--init',
                         help='initial configuration, e.g. "l0 x=0 y=1/2"')
        sub.add_argument('--state-cap', type=int)
        sub.add_argument('--allow-zeno', action='store_true')
        if name == 'bra':
            sub.add_argument('--dot', help='also write a Graphviz file')
            continue
        sub.add_argument('--sense', choices=SENSES, default=UPPER)
        sub.add_argument('--epsilon', type=float)
        sub.add_argument('--exact', action='store_true')
        if name == 'decide':
            sub.add_argument('--bound',
                             required=True,
                             help='threshold as p/q or decimal, or inf')
        if name == 'simulate':
            sub.add_argument('--runs', type=int, default=10000)
            sub.add_argument('--horizon', type=int, default=1000)
            sub.add_argument('--seed', type=int, default=0)
            sub.add_argument('--epsilon-shift')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _buildParser().parse_args(argv)
    options = vars(args)
    try:
        configureLogging(get_settings().log_level)
        if args.verbose:
            level = logging.INFO if args.verbose == 1 else logging.DEBUG
            configureLogging(min(level, logging.getLogger('ptga').level))
        request = CommandRequest(**options)
    except PtgaError as error:
        emitError(error)
        return EXIT_ERROR
    return run(request)
