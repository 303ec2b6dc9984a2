# ============================================================================ #
# Copyright (c) 2022 - 2024 NVIDIA Corporation & Affiliates.                   #
# All rights reserved.                                                         #
#                                                                              #
# This source code and the accompanying materials are made available under     #
# the terms of the Apache License 2.0 which accompanies this distribution.     #
# ============================================================================ #

import os

import pytest

import ptga
from utils.ptga_fixtures import FIXTURES, load

HEADER = 'clocks x;\nbound 1;\n'
BROKEN = (
    'location l0; location l1;\n'
    'edge min a from l0 { 1/2 -> l1; 1/3 -> l0 }\ntarget l1;',
    'location l0;\nedge min a from l0 { 1 reset x -> l0 }\n',
)


def codes(issues):
    return [issue.code for issue in issues]


@pytest.mark.parametrize('name', FIXTURES)
def test_fixtures_are_accepted(name):
    model = load(name)
    report = ptga.validate(model)
    assert report.accepted, [str(e) for e in report.errors]
    assert ptga.check_structural_non_zeno(model)


@pytest.mark.parametrize('body, code', [
    ('location l0; location l1;\n'
     'edge min a from l0 { 1/2 -> l1; 1/3 -> l0 }\ntarget l1;',
     'distribution-not-stochastic'),
    ('actions min a; actions max a;\nlocation l0; location l1;\n'
     'edge min a from l0 { 1 -> l1 }\ntarget l1;', 'player-action-overlap'),
    ('location l0; location l1;\nedge min a from l0 { 1 -> l9 }\ntarget l1;',
     'unknown-location'),
    ('location l0; location l1;\n'
     'edge min a from l0 guard x<=3 { 1 -> l1 }\ntarget l1;',
     'bound-exceeded'),
    ('location l0; location l1;\n'
     'edge min a from l0 guard y<=1 { 1 -> l1 }\ntarget l1;',
     'unknown-clock'),
    ('actions min a; actions max c;\nlocation l0; location l1;\n'
     'edge max a from l0 { 1 -> l1 }\ntarget l1;', 'unknown-action'),
    ('location l0 { inv x<=1 } location l1;\n'
     'edge min a from l0 guard x>1 { 1 -> l1 }\ntarget l1;',
     'dead-configuration'),
    ('location l0 { inv x<1 } location l1;\n'
     'edge min a from l0 guard x=0 { 1 -> l1 }\ntarget l1;\ninit l0 (x=1);',
     'initial-invalid'),
])
def test_rejected_models(body, code):
    report = ptga.validate(ptga.parse_model(HEADER + body))
    assert not report.accepted
    assert code in codes(report.errors)


def test_report_cites_the_edge():
    report = ptga.validate(
        ptga.parse_model(HEADER + 'location l0; location l1;\n'
                         'edge min a from l0 { 1/2 -> l1; 1/3 -> l0 }\n'
                         'target l1;'))
    (issue,) = report.errors
    assert issue.context == 'a@l0'
    assert str(issue).startswith('distribution-not-stochastic [a@l0]')
    assert report.to_json()['accepted'] is False


def test_warnings_do_not_reject():
    report = ptga.validate(
        ptga.parse_model(HEADER + 'location l0;\n'
                         'edge min a from l0 { 1 reset x -> l0 }\n'))
    assert report.accepted
    assert 'no-targets' in codes(report.warnings)


def test_reset_leaving_invariant_is_reported():
    report = ptga.validate(
        ptga.parse_model(HEADER + 'location l0 { inv x<=1 }\n'
                         'location l1 { inv x>0 }\n'
                         'edge min a from l0 guard x<=1 { 1 reset x -> l1 }\n'
                         'edge min b from l0 guard x=1 { 1 -> l1 }\n'
                         'target l1;'))
    assert report.accepted
    assert 'reset-leaves-invariant' in codes(report.warnings)


def test_zeno_cycle_witness():
    model = ptga.parse_model(HEADER + 'location l0; location l1; location l2;\n'
                             'edge min a from l0 { 1 -> l1 }\n'
                             'edge min b from l1 { 1 -> l0 }\n'
                             'edge min c from l0 guard x>=1 { 1 -> l2 }\n'
                             'target l2;')
    result = ptga.check_structural_non_zeno(model)
    assert not result
    assert set(result.witness) == {('l0', 'a', 'l1'), ('l1', 'b', 'l0')}


def test_guarded_reset_cycle_is_non_zeno():
    model = ptga.parse_model(HEADER + 'location l0; location l1; location l2;\n'
                             'edge min a from l0 guard x>=1 '
                             '{ 1 reset x -> l1 }\n'
                             'edge min b from l1 { 1 -> l0 }\n'
                             'edge max c from l1 guard x=1 { 1 -> l2 }\n'
                             'target l2;')
    assert ptga.check_structural_non_zeno(model).ok


def test_cycles_through_targets_are_ignored():
    model = load('wait_or_gamble')
    assert model.edge('l2', 'loop').branches[0].target == 'l2'
    assert ptga.check_structural_non_zeno(model).witness == ()


def test_dead_configuration_only_where_reached():
    unreached = ptga.validate(
        ptga.parse_model(HEADER + 'location l0; location l1; location l2;\n'
                         'edge min a from l0 { 1 -> l1 }\ntarget l1;'))
    assert 'dead-configuration' not in codes(unreached.errors)
    reached = ptga.validate(
        ptga.parse_model(HEADER + 'location l0; location l1; location l2;\n'
                         'edge min a from l0 { 1 -> l2 }\ntarget l1;'))
    (issue,) = [e for e in reached.errors if e.code == 'dead-configuration']
    assert issue.context == 'l2'
    assert 'reached from the initial configuration' in issue.message


@pytest.mark.parametrize('source', FIXTURES + BROKEN)
def test_validation_is_pure(source):
    """Validating twice yields the same report and leaves the model as
    parsed."""
    build = (lambda: load(source)) if source in FIXTURES else \
        (lambda: ptga.parse_model(HEADER + source))
    model = build()
    first = ptga.validate(model)
    assert ptga.validate(model) == first
    assert ptga.validate(model).to_json() == first.to_json()
    assert model == build()


def test_availability_requires_landing_inside_invariants():
    model = ptga.parse_model(HEADER + 'location l0 { inv x<=1 }\n'
                             'location l1 { inv x>0 }\n'
                             'edge min a from l0 { 1 reset x -> l1 }\n'
                             'edge min b from l0 { 1 -> l1 }\n'
                             'target l1;')
    zeta = ptga.region_of(ptga.ClockValuation.of(model.space, {'x': '1/2'}))
    assert not model.available_in_region(model.edge('l0', 'a'), zeta)
    assert model.available_in_region(model.edge('l0', 'b'), zeta)


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
