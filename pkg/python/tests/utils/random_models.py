# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
"""
Random two-clock arenas for property tests.

Every non-target location has a Min action `go` to the target, enabled
everywhere, so no configuration is dead. Edges into non-target locations
are guarded by `c>=1` for some clock `c` and reset `c` on those branches,
which makes every generated arena structurally non-Zeno.
"""

import numpy as np

import ptga

_SPLITS = (('1',), ('1/2', '1/2'), ('1/3', '2/3'), ('1/4', '3/4'))
_STARTS = ('0', '1/3', '1/2')


def _edge(rng, player, action, source, locations, target):
    clock, other = ('x', 'y') if rng.random() < 0.5 else ('y', 'x')
    guard = f'{clock}>=1'
    if rng.random() < 0.3:
        guard += f' & {other}<=1'
    split = _SPLITS[rng.integers(len(_SPLITS))]
    branches = []
    for p in split:
        to = locations[rng.integers(len(locations))]
        resets = []
        if to != target or rng.random() < 0.5:
            resets.append(clock)
        if rng.random() < 0.3:
            resets.append(other)
        reset = f' reset {" ".join(resets)}' if resets else ''
        branches.append(f'{p}{reset} -> {to}')
    return (f'edge {player} {action} from {source} guard {guard} '
            f'{{ {"; ".join(branches)} }}')


def random_model_text(rng: np.random.Generator, name='random'):
    count = int(rng.integers(2, 5))
    bound = int(rng.integers(1, 3))
    locations = [f'l{k}' for k in range(count)]
    target = locations[-1]
    lines = [f'model {name};', 'clocks x y;', f'bound {bound};']
    lines.extend(f'location {loc};' for loc in locations)
    for loc in locations[:-1]:
        lines.append(f'edge min go from {loc} {{ 1 -> {target} }}')
        for player, action, chance in (('min', 'm', 0.6), ('max', 'c', 0.8),
                                       ('max', 'd', 0.4)):
            if rng.random() < chance:
                lines.append(
                    _edge(rng, player, action, loc, locations, target))
    x = _STARTS[rng.integers(len(_STARTS))]
    y = _STARTS[rng.integers(len(_STARTS))]
    lines.append(f'target {target};')
    lines.append(f'init l0 (x={x}, y={y});')
    return '\n'.join(lines) + '\n'


def random_model(rng: np.random.Generator, name='random'):
    return ptga.parse_model(random_model_text(rng, name))


def random_models(count, seed=0):
    rng = np.random.default_rng(seed)
    return [random_model(rng, f'random{k}') for k in range(count)]
