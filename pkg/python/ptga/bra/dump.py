# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #
from __future__ import annotations

import json

from ..model import MAX, MIN
from ..utils import format_number
from .explore import BraGame

SCHEMA_VERSION = 1


def _valuation(nu):
    return {c: format_number(v) for c, v in nu.items()}


def _edge(e):
    return {
        'action': e.action.action,
        'region': str(e.action.region),
        'op': e.action.op,
        'label': e.action.label(),
        'delay': format_number(e.delay),
        'successors': [[format_number(p), j] for p, j in e.successors]
    }


def bra_to_dict(game: BraGame):
    states = []
    for i, s in enumerate(game.states):
        states.append({
            'index': i,
            'location': s.location,
            'valuation': _valuation(s.valuation),
            'region': str(s.region),
            'target': game.is_target(i),
            MIN: [_edge(e) for e in game.edges(i, MIN)],
            MAX: [_edge(e) for e in game.edges(i, MAX)]
        })
    return {
        'schema': SCHEMA_VERSION,
        'model': game.model.name,
        'clocks': list(game.model.clocks),
        'bound': game.model.bound,
        'initial': 0,
        'states': states
    }


def bra_to_json(game: BraGame, indent=2) -> str:
    """The explored abstraction as JSON with sorted keys. Numbers are exact
    `p/q` strings; regions are rendered as clock constraints."""
    return json.dumps(bra_to_dict(game), indent=indent, sort_keys=True)


def _quote(text):
    return '"' + str(text).replace('\\', '\\\\').replace('"', '\\"') + '"'


def bra_to_dot(game: BraGame) -> str:
    """
    Graphviz rendering: one box per state, one point node per action
    (solid for Min, dashed for Max) labelled with its delay, and one
    arrow per successor labelled with its probability.
    """
    lines = ['digraph bra {', '  rankdir=LR;', '  node [shape=box];']
    for i, s in enumerate(game.states):
        style = ', peripheries=2' if game.is_target(i) else ''
        lines.append(f'  s{i} [label={_quote(f"{i}: {s}")}{style}];')
    for i in range(len(game)):
        for player, dash in ((MIN, ''), (MAX, ', style=dashed')):
            for k, e in enumerate(game.edges(i, player)):
                a = f'a{i}_{player}{k}'
                lines.append(f'  {a} [shape=point];')
                label = f'{e.action.label()} / {format_number(e.delay)}'
                lines.append(f'  s{i} -> {a} [label={_quote(label)}{dash}];')
                for p, j in e.successors:
                    lines.append(
                        f'  {a} -> s{j} [label={_quote(format_number(p))}];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
