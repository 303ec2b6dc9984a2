# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

import math
import os
from collections import defaultdict

import pytest
import numpy as np

import ptga
from utils.bra_oracle import oracle_n_step
from utils.ptga_fixtures import FIXTURES, load
from utils.random_models import random_models

RACE_OFF_GRID = ('race', ('l0', {'x': '3/10', 'y': '1/10'}))
STARTS = [(name, None) for name in FIXTURES] + [RACE_OFF_GRID]


def games(name, init):
    game = ptga.build_reachable_bra(load(name), init)
    return game, {s: ptga.to_turn_based(game, s) for s in ptga.SENSES}


def finite_close(a, b, atol):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    assert np.array_equal(np.isinf(a), np.isinf(b))
    finite = ~np.isinf(a)
    return np.allclose(a[finite], b[finite], atol=atol)


@pytest.mark.parametrize('name, init', STARTS)
def test_turn_based_matches_simultaneous_rounds(name, init):
    """Backward induction on the turn-based game equals direct evaluation
    of the simultaneous rounds, exactly."""
    game, bySense = games(name, init)
    for sense, g in bySense.items():
        for n in range(1, 5):
            V = ptga.n_step_values(g, n, exact=True)
            want = oracle_n_step(game, n, sense)
            assert [V[i] for i in range(len(game))] == want


@pytest.mark.parametrize('name, init', STARTS)
def test_regional_non_expansiveness(name, init):
    """States sharing location and region differ in value by at most the
    distance between their valuations."""
    game, bySense = games(name, init)
    groups = defaultdict(list)
    for i, s in enumerate(game.states):
        groups[(s.location, s.region)].append(i)
    pairs = [(i, j) for members in groups.values() for i in members
             for j in members if i < j]
    for g in bySense.values():
        vectors = [ptga.n_step_values(g, n, exact=True) for n in (1, 3, 6, 20)]
        converged = ptga.solve(g, epsilon=1e-12).values
        for i, j in pairs:
            d = game.states[i].valuation.distance(game.states[j].valuation)
            for V in vectors:
                assert abs(V[i] - V[j]) <= d
            a, b = converged[i], converged[j]
            if math.isinf(a) or math.isinf(b):
                continue
            assert abs(a - b) <= float(d) + 1e-8


@pytest.mark.parametrize('seed', range(13))
def test_random_models(seed):
    """n-step values increase, the limit solves the optimality equations,
    and both solver modes agree."""
    for model in random_models(8, seed):
        report = ptga.validate(model)
        assert report.accepted, [str(e) for e in report.errors]
        assert ptga.check_structural_non_zeno(model)
        game = ptga.build_reachable_bra(model)
        assert ptga.check_signatures(game)
        for sense in ptga.SENSES:
            g = ptga.to_turn_based(game, sense)
            previous = np.zeros(len(g))
            for n in range(1, 9):
                current = ptga.n_step_values(g, n).as_array()
                assert np.all(current >= previous - 1e-12)
                previous = current

            iterative = ptga.solve(g, epsilon=1e-12)
            V = iterative.values.as_array()
            again = ptga.bellman_step(g, iterative.values).as_array()
            assert finite_close(again, V, 1e-8)

            exact = ptga.solve(g, exact=True)
            first = list(g.first_nodes)
            assert finite_close(exact.values.as_array()[first], V[first],
                                1e-8)

            if len(game) <= 50:
                want = oracle_n_step(game, 3, sense)
                got = ptga.n_step_values(g, 3, exact=True)
                assert [got[i] for i in range(len(game))] == want


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
