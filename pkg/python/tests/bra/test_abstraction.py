# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

import json
import os
from fractions import Fraction

import pytest

import ptga
from utils.ptga_fixtures import FIXTURES, explore, load

X1 = ptga.ClockSpace(('x',), 1)


def region(x):
    return ptga.region_of(ptga.ClockValuation.of(X1, {'x': x}))


def act(name, x, op):
    return ptga.BraAction(name, region(x), op)


def test_race_boundary_delays():
    """From (l0, x=3/10, y=1/10) Min reaches its regions at the boundary
    delays 7/10 (x=1), 9/10 (y=1) and 17/10 (x=2)."""
    model = load('race')
    game = ptga.build_reachable_bra(model, ('l0', {'x': '3/10', 'y': '1/10'}))
    delays = {e.delay for e in game.edges(0, ptga.MIN)}
    assert {Fraction(7, 10), Fraction(9, 10), Fraction(17, 10)} <= delays
    assert game.edges(0, ptga.MAX) == ()
    assert game.actions(0, ptga.MAX) == [ptga.BOTTOM]

    (b,) = [
        e for e in game.edges(0, ptga.MIN)
        if e.action.action == 'b' and e.action.op == ptga.INF and
        e.delay == Fraction(7, 10)
    ]
    landed = {}
    for p, j in b.successors:
        s = game.states[j]
        landed[s.location] = (p, s.valuation.as_dict())
    assert landed == {
        'l1': (Fraction(1, 2), {'x': 0, 'y': Fraction(4, 5)}),
        'l2': (Fraction(1, 2), {'x': 0, 'y': 0}),
    }


def test_successor_regions_follow_resets():
    model = load('race')
    s = ptga.BraState.embed(
        'l0', ptga.ClockValuation.of(model.space, {'x': '3/10', 'y': '1/10'}))
    target = ptga.region_of(
        ptga.ClockValuation.of(model.space, {'x': '11/10', 'y': '9/10'}))
    alpha = ptga.BraAction('b', target, ptga.INF)
    assert ptga.is_enabled(model, s, alpha)
    assert ptga.bra_delay(s, alpha) == Fraction(7, 10)
    assert ptga.bra_delay(s, ptga.BraAction('b', target, ptga.SUP)) == \
        Fraction(9, 10)
    for p, succ in ptga.bra_successors(model, s, alpha):
        assert p == Fraction(1, 2)
        assert succ.region == ptga.region_reset(
            target, model.edge('l0', 'b').branches[0].resets if
            succ.location == 'l1' else ('x', 'y'))


def test_disabled_action():
    model = load('wait_or_gamble')
    s = ptga.BraState.embed('l0',
                            ptga.ClockValuation.of(model.space, {'x': '1/2'}))
    past = ptga.BraAction('a', region(0), ptga.INF)
    assert not ptga.is_enabled(model, s, past)
    with pytest.raises(ptga.DomainError):
        ptga.bra_successors(model, s, past)
    with pytest.raises(ptga.DomainError):
        ptga.bra_delay(s, past)
    early = ptga.BraAction('b', region('1/2'), ptga.INF)
    assert not ptga.is_enabled(model, s, early)


def test_enabled_actions_of_one_player():
    model = load('wait_or_gamble')
    s = ptga.BraState.embed('l0',
                            ptga.ClockValuation.of(model.space, {'x': '1/4'}))
    mins, maxs = ptga.enabled_bra_actions(model, s)
    assert maxs == [ptga.BOTTOM]
    assert set(a.label() for a in mins) == {
        a.label() for a in (act('a', '1/2', ptga.INF),
                                 act('a', '1/2', ptga.SUP),
                                 act('a', 1, ptga.INF), act('a', 1, ptga.SUP),
                                 act('b', 1, ptga.INF), act('b', 1, ptga.SUP))
    }


@pytest.mark.parametrize('alpha, beta, sense, winner', [
    (act('a', 0, 'inf'), act('c', 0, 'sup'), 'upper', 'a'),
    (act('a', 0, 'inf'), act('c', 0, 'inf'), 'upper', 'c'),
    (act('a', 0, 'sup'), act('c', 0, 'sup'), 'upper', 'c'),
    (act('a', '1/2', 'sup'), act('c', 1, 'inf'), 'upper', 'a'),
    (act('a', 1, 'inf'), act('c', '1/2', 'sup'), 'upper', 'c'),
    (act('a', '1/2', 'inf'), act('c', '1/2', 'inf'), 'upper', 'c'),
    (act('a', '1/2', 'inf'), act('c', '1/2', 'inf'), 'lower', 'a'),
    (act('a', '1/2', 'sup'), act('c', '1/2', 'sup'), 'lower', 'a'),
    (act('a', '1/2', 'sup'), act('c', '1/2', 'inf'), 'lower', 'c'),
    (act('a', 0, 'inf'), act('c', 0, 'inf'), 'lower', 'c'),
    (act('a', 0, 'inf'), act('c', 0, 'sup'), 'lower', 'a'),
    (ptga.BOTTOM, act('c', 1, 'sup'), 'upper', 'c'),
    (act('a', 1, 'sup'), ptga.BOTTOM, 'lower', 'a'),
])
def test_winner(alpha, beta, sense, winner):
    assert ptga.bra_winner(alpha, beta, sense=sense).action == winner


def test_winner_of_two_idle_players():
    with pytest.raises(ptga.DomainError):
        ptga.bra_winner(ptga.BOTTOM, ptga.BOTTOM)
    with pytest.raises(ptga.UsageError):
        ptga.bra_winner(ptga.BOTTOM, act('c', 1, 'inf'), sense='middle')


@pytest.mark.parametrize('name', FIXTURES)
def test_signatures_stay_within_the_initial_one(name):
    _, game, _ = explore(name)
    assert ptga.check_signatures(game)
    assert game.find(game.states[0]) == 0
    assert len(set(game.states)) == len(game)


def test_state_cap_and_invalid_start():
    model = load('race')
    with pytest.raises(ptga.ResourceError):
        ptga.build_reachable_bra(model, state_cap=2)
    with pytest.raises(ptga.DomainError):
        ptga.build_reachable_bra(model, ('l1', {'x': 0, 'y': 0}))


def test_dumps():
    _, game, _ = explore('race')
    data = json.loads(ptga.bra_to_json(game))
    assert data['schema'] == 1
    assert data['clocks'] == ['x', 'y']
    assert len(data['states']) == len(game)
    first = data['states'][0]
    assert first['valuation'] == {'x': '0', 'y': '0'}
    assert first['max'] == []
    assert {e['op'] for e in first['min']} == {'inf', 'sup'}
    assert any(s['target'] for s in data['states'])
    dot = ptga.bra_to_dot(game)
    assert dot.startswith('digraph bra {')
    assert 'peripheries=2' in dot
    assert dot.rstrip().endswith('}')


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
