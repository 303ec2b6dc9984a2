# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

import os
from fractions import Fraction

import pytest

import ptga
from utils.ptga_fixtures import explore, solved


@pytest.mark.parametrize('sense, bound, verdict', [
    ('upper', '1', ptga.AT_MOST),
    ('upper', '1/2', ptga.GREATER),
    ('upper', '0.999', ptga.GREATER),
    ('lower', '1/2', ptga.AT_MOST),
    ('lower', '0', ptga.AT_MOST),
])
@pytest.mark.parametrize('exact', [False, True])
def test_decide_nondetermined(sense, bound, verdict, exact):
    _, _, g = explore('nondetermined', sense=sense)
    decision = ptga.decide_threshold(g, 0, bound, exact=exact)
    assert decision.verdict == verdict
    assert decision.lower <= decision.upper


def test_exact_decision_reports_the_value():
    _, _, g = explore('wait_or_gamble', ('l0', {'x': '3/4'}))
    decision = ptga.decide_threshold(g, 0, '1/4', exact=True)
    assert decision == ptga.Decision(ptga.AT_MOST, Fraction(1, 4),
                                     Fraction(1, 4))


def test_no_bound():
    _, _, g = explore('race')
    assert ptga.decide_threshold(g, 0, None).verdict == ptga.AT_MOST
    with pytest.raises(ptga.UsageError):
        ptga.decide_threshold(g, len(g), '1')


def test_weak_strategies_leave_the_answer_open():
    """The bracket comes from the strategies that were extracted: a Min
    strategy that waits where gambling is better only certifies 1."""
    _, _, g, solution = solved('wait_or_gamble')
    (wait,) = [
        k for k, c in enumerate(g.choices[0]) if c.label.startswith('b[')
    ][:1]
    mu = solution.strategies[ptga.MIN].as_dict()
    mu[0] = wait
    weak = ptga.Solution(
        solution.values, {
            ptga.MIN: ptga.PositionalStrategy.of(ptga.MIN, mu),
            ptga.MAX: solution.strategies[ptga.MAX]
        }, solution.iterations, solution.residual, False)
    decision = ptga.decide_threshold(g, 0, '3/4', solution=weak)
    assert decision.verdict == ptga.UNDECIDED
    assert decision.lower == Fraction(1, 2)
    assert decision.upper == 1


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
