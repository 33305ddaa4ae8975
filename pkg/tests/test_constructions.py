from fractions import Fraction
from math import comb

import pytest

from msncap.constructions import (
    absolute_capacity_of,
    collector_distributor_family,
    four_slope_optimal,
    grid,
    max_capacity_gmsn,
    min_capacity_gmsn,
    three_slope_arrangement,
    three_slope_optimal,
)
from msncap.core import capacity, deliveries
from msncap.errors import BadParams
from msncap.formulas import max3, max4, max_rcmsn, maxabs2, maxabs_limit, min_rcmsn
from msncap.geometry import STABLE_IF_DISJOINT, cmsn_from_arrangement


def cap(arr):
    return capacity(cmsn_from_arrangement(arr, STABLE_IF_DISJOINT))


@pytest.mark.parametrize("n", range(3, 16))
def test_extreme_constructions(n):
    assert cap(min_capacity_gmsn(n)) == min_rcmsn(n) == Fraction(2 * (n + 1), 3 * n)
    assert cap(max_capacity_gmsn(n)) == max_rcmsn(n)
    for arr in (min_capacity_gmsn(n), max_capacity_gmsn(n)):
        assert len(set(arr.slopes())) == n


@pytest.mark.parametrize("m,k", [(1, 2), (2, 2), (3, 2), (4, 5), (1, 7)])
def test_grid(m, k):
    n = m + k
    c = cmsn_from_arrangement(grid(m, k), STABLE_IF_DISJOINT)
    assert len(c.events) == m * k
    # every crossing of a grid reaches one full class plus the other crossing line
    assert capacity(c) == Fraction(n + 2, 2 * n)
    assert absolute_capacity_of(grid(m, k)) == Fraction(m * k * (n + 2), n * n * (n - 1))


def test_grid_absolute_best_split():
    for n in range(4, 20):
        best = max(absolute_capacity_of(grid(m, n - m)) for m in range(1, n))
        assert best == maxabs2(n)


@pytest.mark.parametrize("n", [4, 5, 9, 17, 30])
def test_three_slope_optimal(n):
    arr = three_slope_optimal(n)
    assert len(set(arr.slopes())) == 3 and arr.n == n
    assert cap(arr) == max3(n)


def test_three_slope_small_sizes():
    arr = three_slope_arrangement(1, 1, 1)
    assert cap(arr) == Fraction(8, 9)


@pytest.mark.parametrize("n", [5, 6, 7, 10])
def test_four_slope_optimal(n):
    arr = four_slope_optimal(n)
    assert len(set(arr.slopes())) == 4
    assert cap(arr) == max4(n)


def test_collector_distributor_family_approaches_limit():
    for s in (3, 4, 5):
        arr = collector_distributor_family(40, s)
        assert len(set(arr.slopes())) == s
        val = absolute_capacity_of(arr)
        assert 0 < val < 1
    # finite sizes overshoot the limit and decrease toward it
    for s in (3, 4):
        limit = float(maxabs_limit(s))
        vals = [float(absolute_capacity_of(collector_distributor_family(n, s))) for n in (10, 20, 40, 80)]
        assert all(a > b > limit for a, b in zip(vals, vals[1:]))
        assert vals[-1] - limit < 0.01


def test_absolute_definition():
    arr = min_capacity_gmsn(5)
    rep = deliveries(cmsn_from_arrangement(arr))
    assert absolute_capacity_of(arr) == Fraction(rep.total, 5 * comb(5, 2))


def test_bad_params():
    with pytest.raises(BadParams):
        grid(1, 1)
    with pytest.raises(BadParams):
        three_slope_optimal(3)
    with pytest.raises(BadParams):
        collector_distributor_family(3, 4)
