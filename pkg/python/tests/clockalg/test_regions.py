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
import numpy as np

import ptga

XY = ptga.ClockSpace(('x', 'y'), 2)
X1 = ptga.ClockSpace(('x',), 1)
XYZ = ptga.ClockSpace(('x', 'y', 'z'), 2)
_RELATIONS = ('<', '<=', '=', '>=', '>')


def nu(space=XY, **values):
    return ptga.ClockValuation.of(space, values)


def test_valuation_arithmetic():
    v = nu(x='3/10', y='0.1')
    assert v['x'] == Fraction(3, 10)
    assert v['y'] == Fraction(1, 10)
    assert v.elapse('7/10') == nu(x=1, y='4/5')
    assert v.reset(['x']) == nu(y='1/10')
    assert v.distance(nu(x='1/2', y=0)) == Fraction(1, 5)
    with pytest.raises(ptga.DomainError):
        v.elapse(2)
    with pytest.raises(ptga.UsageError):
        nu(z=1)


def test_region_of_groups_equal_fractions():
    zeta = ptga.region_of(nu(x='13/10', y='3/10'))
    assert zeta.ints == (1, 0)
    assert zeta.zero == frozenset()
    assert zeta.blocks == (frozenset({0, 1}),)
    assert ptga.region_contains(zeta, nu(x='17/10', y='7/10'))
    assert not ptga.region_contains(zeta, nu(x='17/10', y='3/5'))


def test_time_successor_chain():
    """From zero the successors alternate between thin and thick regions
    until a clock reaches the bound."""
    chain = ptga.region_future(ptga.region_of(nu(X1)))
    assert len(chain) == 3
    assert [ptga.is_thin(z) for z in chain] == [True, False, True]
    assert ptga.time_successor(chain[-1]) is None
    assert ptga.region_precedes(chain[0], chain[2])
    assert not ptga.region_precedes(chain[2], chain[0])
    assert not ptga.region_precedes(chain[1], chain[1])


def test_time_successor_moves_last_block():
    zeta = ptga.region_of(nu(x='13/10', y='1/10'))
    nxt = ptga.time_successor(zeta)
    assert nxt == ptga.region_of(nu(x=2, y='4/5'))


def test_region_reset():
    zeta = ptga.region_of(nu(x='13/10', y='1/10'))
    assert ptga.region_reset(zeta, ['x']) == ptga.region_of(nu(y='1/10'))
    assert ptga.region_reset(zeta, ['x', 'y']) == ptga.region_of(nu())


@pytest.mark.parametrize('space, count', [(ptga.ClockSpace(('x',), 1), 3),
                                          (ptga.ClockSpace(('x',), 2), 5),
                                          (ptga.ClockSpace(('x', 'y'), 1), 11)])
def test_enumerate_regions(space, count):
    regions = list(ptga.enumerate_regions(space))
    assert len(regions) == count
    assert len(set(regions)) == count
    for zeta in regions:
        assert ptga.region_of(ptga.region_sample(zeta)) == zeta


@pytest.mark.parametrize('target, bounds', [
    (dict(x='11/10', y='9/10'), ('7/10', '9/10')),
    (dict(x='6/5', y=1), ('9/10', '9/10')),
    (dict(x=2, y='9/5'), ('17/10', '17/10')),
])
def test_delay_bounds(target, bounds):
    start = nu(x='3/10', y='1/10')
    zeta = ptga.region_of(nu(**target))
    want = tuple(Fraction(b) for b in bounds)
    assert ptga.delay_bounds(start, zeta) == want


def test_delay_bounds_from_region_boundary():
    """A valuation on the closure of its region still gets the closed
    delay interval."""
    start = nu(x=1, y='4/5')
    zeta = ptga.region_of(nu(x='11/10', y='9/10'))
    assert ptga.delay_bounds(start, zeta) == (0, Fraction(1, 5))


def test_delay_bounds_unreachable():
    with pytest.raises(ptga.DomainError):
        ptga.delay_bounds(nu(x='1/2'), ptga.region_of(nu(y='1/2')))


def test_delay_bounds_outside_shared_fraction_future():
    """Clocks sharing a fractional part keep sharing it: a region that
    separates them is never reached."""
    start = nu(x='1/2', y='1/2')
    with pytest.raises(ptga.DomainError):
        ptga.delay_bounds(start, ptga.region_of(nu(x='1/4', y='1/2')))
    with pytest.raises(ptga.DomainError):
        ptga.delay_bounds(start, ptga.region_of(nu(x='3/2', y='7/4')))
    assert ptga.delay_bounds(start, ptga.region_of(nu(x=1, y=1))) == \
        (Fraction(1, 2), Fraction(1, 2))


def test_delay_bounds_with_explicit_source():
    """The future is taken from the given region when the valuation sits on
    its boundary."""
    start = nu(x=1, y='4/5')
    source = ptga.region_of(nu(x='9/10', y='7/10'))
    target = ptga.region_of(nu(x='11/10', y='9/10'))
    assert ptga.delay_bounds(start, target, source) == (0, Fraction(1, 5))
    assert ptga.delay_bounds(start, source, source) == (0, 0)
    with pytest.raises(ptga.DomainError):
        ptga.delay_bounds(start, source, target)


def test_delay_bounds_monotone_along_chain():
    """Later regions of a chain never start or end earlier."""
    rng = np.random.default_rng(21)
    for _ in range(200):
        start = nu(XYZ, **{c: Fraction(int(rng.integers(0, 17)), 8)
                           for c in XYZ.clocks})
        bounds = [ptga.delay_bounds(start, zeta)
                  for zeta in ptga.region_future(ptga.region_of(start))]
        assert bounds[0][0] == 0
        for (lo, hi) in bounds:
            assert 0 <= lo <= hi <= XYZ.bound
        for (lo, hi), (lo2, hi2) in zip(bounds, bounds[1:]):
            assert lo <= lo2
            assert hi <= hi2
            assert hi == lo2


def _atomCorpus(space):
    K = space.bound
    texts = [f'{c} {rel} {n}' for c in space.clocks for n in range(K + 1)
             for rel in _RELATIONS]
    texts += [f'{c}-{d} {rel} {n}' for c in space.clocks
              for d in space.clocks if c != d for n in range(-K, K + 1)
              for rel in _RELATIONS]
    return [ptga.parse_constraint(t) for t in texts]


def test_region_is_canonical():
    """Two valuations share a region iff every atom with constants within
    the bound agrees on them."""
    rng = np.random.default_rng(22)
    corpus = _atomCorpus(XYZ)
    pool = [nu(XYZ, **{c: Fraction(int(rng.integers(0, 9)), 4)
                       for c in XYZ.clocks}) for _ in range(150)]
    profiles = [tuple(ptga.satisfies(v, g) for g in corpus) for v in pool]
    regions = [ptga.region_of(v) for v in pool]
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            assert (regions[i] == regions[j]) == (profiles[i] == profiles[j])


def test_chain_ends_when_one_clock_reaches_bound():
    zeta = ptga.region_of(nu(x=2, y='1/2'))
    assert ptga.time_successor(zeta) is None
    assert ptga.region_future(zeta) == (zeta,)
    before = ptga.region_of(nu(x='3/2', y=0))
    assert ptga.region_future(before)[-1] == ptga.region_of(nu(x=2, y='1/2'))


def test_fractional_signature_and_shift():
    sig = ptga.fractional_signature(nu(x='3/10', y='1/10'))
    assert sig.fracs == (0, Fraction(1, 10), Fraction(3, 10))
    shifted = ptga.k_shift(sig, 1)
    assert shifted.fracs == (0, Fraction(1, 5), Fraction(9, 10))
    assert ptga.k_shift(sig, 0) == sig
    assert ptga.signature_within(ptga.fractional_signature(nu(y='1/5')), sig)
    assert not ptga.signature_within(
        ptga.fractional_signature(nu(y='1/7')), sig)
    with pytest.raises(ptga.UsageError):
        ptga.k_shift(sig, 3)


def test_k_shift_composes():
    """Shifting by k1 and then by k2 shifts by k1 + k2 modulo the size."""
    rng = np.random.default_rng(23)
    for _ in range(300):
        m = int(rng.integers(0, 5))
        fracs = sorted({Fraction(int(a), 16)
                        for a in rng.integers(1, 16, size=m)})
        sig = ptga.FracSignature(tuple([Fraction(0)] + fracs))
        size = len(sig.fracs)
        for k1 in range(size):
            for k2 in range(size):
                assert ptga.k_shift(ptga.k_shift(sig, k1), k2) == \
                    ptga.k_shift(sig, (k1 + k2) % size)


def test_sample_fractions_are_spread():
    zeta = ptga.region_of(nu(x='13/10', y='1/10'))
    sample = ptga.region_sample(zeta)
    fracs = np.array([float(v % 1) for v in sample.values])
    assert np.allclose(sorted(fracs), [1 / 3, 2 / 3])


if __name__ == "__main__":
    loc = os.path.abspath(__file__)
    pytest.main([loc, "-rP"])
