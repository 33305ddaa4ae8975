import math

import pytest

from msncap.errors import BadParams
from msncap.formulas import cap2, max_rcmsn, min_rcmsn
from msncap.montecarlo import (
    estimate_gmsn_capacity,
    estimate_reach_table,
    estimate_rgmsn_capacity,
    group_size,
    partition_conjecture_experiment,
    random_rcmsn_capacity,
    reach_labels,
)


def test_determinism():
    a = estimate_gmsn_capacity(12, 20, seed=4)
    b = estimate_gmsn_capacity(12, 20, seed=4)
    assert a == b and a.values == b.values
    assert estimate_gmsn_capacity(12, 20, seed=5).values != a.values


def test_trial_prefix_stability():
    # trial t uses its own stream, so more trials extend the same sequence
    short = estimate_rgmsn_capacity(10, 3, 10, seed=2)
    long = estimate_rgmsn_capacity(10, 3, 25, seed=2)
    assert long.values[:10] == short.values


def test_workers_do_not_change_results():
    one = estimate_gmsn_capacity(10, 12, seed=9)
    two = estimate_gmsn_capacity(10, 12, seed=9, workers=2)
    assert one.values == two.values and one.mean == two.mean


def test_gmsn_bounds():
    rep = estimate_gmsn_capacity(9, 40, seed=1)
    assert all(float(min_rcmsn(9)) <= v <= float(max_rcmsn(9)) for v in rep.values)
    assert rep.trials == 40 and rep.n == 9 and rep.seed == 1
    assert rep.stderr == pytest.approx(
        math.sqrt(sum((v - rep.mean) ** 2 for v in rep.values) / 39 / 40)
    )


def test_two_slopes_is_exact():
    rep = estimate_rgmsn_capacity(15, 2, 30, seed=3)
    assert set(rep.values) == {float(cap2(15))}
    assert rep.stderr == 0 and rep.extra == {"s": 2}


def test_reach_table_shape():
    rep = estimate_reach_table(3, 12, 20, seed=0)
    table = rep.extra["table"]
    assert len(table) == len(reach_labels(3)) == 9
    assert all(0 <= v <= 1 for v in table.values())
    # a crossing always reaches both of its own classes' lines that meet it later,
    # so the extreme-column entries stay below one while the average is an average
    assert min(table.values()) <= rep.mean <= max(table.values())
    assert len(reach_labels(4)) == 24


def test_reach_table_symmetry():
    # reflecting y -> x - y swaps the classes' order and leaves pooled rates alike
    rep = estimate_reach_table(3, 40, 150, seed=8)
    t = rep.extra["table"]
    assert abs(t["P(1,2,2)"] - t["P(2,3,2)"]) < 0.05


def test_exploratory_experiments():
    rep = partition_conjecture_experiment(20, 10, seed=1)
    assert rep.extra["group_size"] == group_size(20) == math.ceil(20 * math.log(20))
    assert 0 <= rep.mean <= 1
    rep = random_rcmsn_capacity(8, 15, seed=1)
    assert all(float(min_rcmsn(8)) - 1 < v <= 1 for v in rep.values)


def test_bad_params():
    with pytest.raises(BadParams):
        estimate_gmsn_capacity(2, 10, 0)
    with pytest.raises(BadParams):
        estimate_gmsn_capacity(10, 0, 0)
    with pytest.raises(BadParams):
        estimate_rgmsn_capacity(10, 1, 10, 0)
    with pytest.raises(BadParams):
        estimate_reach_table(5, 10, 10, 0)
