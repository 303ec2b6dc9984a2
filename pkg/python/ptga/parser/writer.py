# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

from ..model import MAX, MIN, Ptga
from ..utils import format_number


def _branch(branch):
    parts = [format_number(branch.probability)]
    if branch.resets:
        parts.append('reset ' + ' '.join(branch.resets))
    parts.append('-> ' + branch.target)
    return ' '.join(parts)


def _edge(edge):
    head = f'edge {edge.player} {edge.action} from {edge.source}'
    if edge.guard.atoms:
        head += f' guard {edge.guard}'
    body = '; '.join(_branch(b) for b in edge.branches)
    return f'{head} {{ {body} }}'


def serialize_model(model: Ptga) -> str:
    """
    Render `model` in the `.ptga` text format. The layout is canonical:
    header, clocks and bound, action declarations, locations, edges,
    targets and the initial state, each in the order stored in `model`.
    Probabilities are written as exact `p/q`.
    """
    lines = []
    if model.name is not None:
        lines.append(f'model {model.name};')
    lines.append('clocks ' + ' '.join(model.clocks) + ';')
    lines.append(f'bound {model.bound};')
    for player, actions in ((MIN, model.actions_min), (MAX,
                                                       model.actions_max)):
        lines.append(' '.join(['actions', player, *actions]) + ';')
    lines.append('')
    for loc in model.locations:
        if loc.invariant.atoms:
            lines.append(f'location {loc.name} {{ inv {loc.invariant} }}')
        else:
            lines.append(f'location {loc.name};')
    lines.append('')
    lines.extend(_edge(e) for e in model.edges)
    lines.append('')
    if model.targets:
        lines.append('target ' + ' '.join(model.targets) + ';')
    if model.initial is not None:
        init = model.initial
        assignment = ', '.join(
            f'{c}={format_number(v)}' for c, v in init.assignment)
        lines.append(f'init {init.location} ({assignment});')
    return '\n'.join(lines) + '\n'


def write_model(model: Ptga, path) -> None:
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(serialize_model(model))
