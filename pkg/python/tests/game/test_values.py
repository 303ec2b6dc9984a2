# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

import math
import os
from fractions import Fraction

import pytest
import numpy as np

import ptga
from utils.ptga_fixtures import explore, solved


@pytest.mark.parametrize('exact', [False, True])
def test_game_without_value(exact):
    """From (l0, x=0) Min committing first cannot do better than 1, while
    Max committing first cannot prevent 0."""
    _, _, _, upper = solved('nondetermined', exact=exact)
    _, _, _, lower = solved('nondetermined', sense=ptga.LOWER, exact=exact)
    if exact:
        assert upper.value(0) == 1
        assert lower.value(0) == 0
    else:
        assert np.isclose(upper.value(0), 1, atol=1e-9)
        assert np.isclose(lower.value(0), 0, atol=1e-9)


@pytest.mark.parametrize('location, x, want', [
    ('l3', '0', '1'),
    ('l3', '1/4', '3/4'),
    ('l3', '1/2', '1/2'),
    ('l2', '0', '1'),
    ('l2', '1/4', '0'),
    ('l2', '1/2', '0'),
    ('l1', '0', '0'),
])
@pytest.mark.parametrize('exact', [False, True])
def test_intermediate_values(location, x, want, exact):
    _, _, _, solution = solved('nondetermined', (location, {'x': x}),
                               exact=exact)
    if exact:
        assert solution.value(0) == Fraction(want)
    else:
        assert np.isclose(solution.value(0), float(Fraction(want)), atol=1e-9)


@pytest.mark.parametrize('x, want', [('0', '1/2'), ('1/4', '1/2'),
                                     ('1/2', '1/2'), ('3/4', '1/4')])
@pytest.mark.parametrize('exact', [False, True])
def test_wait_or_gamble_curve(x, want, exact):
    """The value at (l0, x) is min{1/2, 1 - x}."""
    _, _, _, solution = solved('wait_or_gamble', ('l0', {'x': x}), exact=exact)
    if exact:
        assert solution.value(0) == Fraction(want)
        assert solution.residual == 0.0
    else:
        assert np.isclose(solution.value(0), float(Fraction(want)), atol=1e-9)
        assert solution.residual < 1e-9


def test_wait_or_gamble_strategies():
    """Gamble while x < 1/2, wait for x=1 once x > 1/2."""
    for x, prefix in (('0', 'a['), ('3/4', 'b[')):
        _, _, g, solution = solved('wait_or_gamble', ('l0', {'x': x}))
        assert solution.strategies[ptga.MIN].label(g, 0).startswith(prefix)


def test_n_step_values_grow():
    _, _, g = explore('race')
    previous = ptga.n_step_values(g, 0).as_array()
    assert np.all(previous == 0)
    for n in range(1, 12):
        current = ptga.n_step_values(g, n).as_array()
        assert np.all(current >= previous - 1e-12)
        previous = current


@pytest.mark.parametrize('name', ['race', 'nondetermined', 'wait_or_gamble'])
@pytest.mark.parametrize('sense', [ptga.UPPER, ptga.LOWER])
def test_solution_is_least_fixpoint(name, sense):
    """Finite-horizon values stay below the solution, and every vector
    solving the optimality equations from above dominates it."""
    _, _, g = explore(name, sense=sense)
    first = list(g.first_nodes)
    want = ptga.solve(g, exact=True).values.as_array()[first]
    for n in (1, 2, 5, 10, 30):
        V = ptga.n_step_values(g, n, exact=True).as_array()[first]
        assert np.all(V <= want + 1e-12)

    rng = np.random.default_rng(31)
    for _ in range(20):
        V = ptga.solve(g).values.as_array() + rng.uniform(0, 3, len(g))
        V = ptga.ValueVector(V)
        for _ in range(3000):
            V = ptga.bellman_step(g, V)
        again = ptga.bellman_step(g, V).as_array()
        assert np.allclose(again, V.as_array(), atol=1e-9)
        assert np.all(V.as_array()[first] >= want - 1e-9)


def test_exact_and_float_steps_agree():
    _, _, g = explore('race', ('l0', {'x': '3/10', 'y': '1/10'}))
    exact = ptga.n_step_values(g, 5, exact=True)
    approx = ptga.n_step_values(g, 5)
    assert exact.exact and not approx.exact
    assert all(isinstance(v, Fraction) for v in exact.values)
    assert np.allclose(exact.as_array(), approx.as_array(), atol=1e-12)


def test_bellman_step_checks_length():
    _, _, g = explore('wait_or_gamble')
    with pytest.raises(ptga.UsageError):
        ptga.bellman_step(g, ptga.ValueVector.zeros(len(g) + 1))
    with pytest.raises(ptga.UsageError):
        ptga.n_step_values(g, -1)


def test_greedy_ties_take_the_lowest_position():
    _, _, g = explore('wait_or_gamble')
    strategies = ptga.greedy_strategies(g, ptga.ValueVector.zeros(len(g)))
    for player in (ptga.MIN, ptga.MAX):
        assert all(choice == 0
                   for _, choice in strategies[player].choices)


def test_unreachable_target_is_infinite():
    model = ptga.parse_model('clocks x; bound 1;\n'
                             'location l0; location l1; location l2;\n'
                             'edge min a from l0 { 1/2 -> l1; 1/2 -> l2 }\n'
                             'edge min b from l1 guard x>=1 '
                             '{ 1 reset x -> l1 }\n'
                             'target l2;')
    game = ptga.build_reachable_bra(model)
    g = ptga.to_turn_based(game)
    assert 0 in ptga.infinite_value_states(g)
    stuck = [i for i, s in enumerate(game.states) if s.location == 'l1']
    assert stuck
    for exact in (False, True):
        solution = ptga.solve(g, exact=exact)
        assert math.isinf(solution.value(0))
        assert all(math.isinf(solution.value(i)) for i in stuck)
        assert solution.values.render(0)['decimal'] == 'inf'


def test_zeno_arena_needs_permission():
    _, _, g = explore('wait_or_gamble')
    with pytest.raises(ptga.ModelError):
        ptga.solve(g, model_non_zeno=False)
    solution = ptga.solve(g, model_non_zeno=False, allow_zeno=True)
    assert np.isclose(solution.value(0), 0.5)


def test_iteration_cap():
    _, _, g = explore('race')
    with pytest.raises(ptga.ResourceError):
        ptga.solve(g, epsilon=1e-300, max_iterations=3)


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
