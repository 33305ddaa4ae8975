
import pytest

from msncap.core import Cmsn
from msncap.errors import EmptyNetwork, TooLarge
from msncap.formulas import max_rcmsn, min_rcmsn
from msncap.lp import GT, LinearSystem
from msncap.oracle import (
    all_rcmsns,
    capacity_chain_oracle,
    enumerate_rcmsn_extremes,
    fm_feasibility,
    min_hops_oracle,
    wiring_orders,
)


def test_chain_oracle_example():
    c = Cmsn.from_pairs(3, [(2, 3), (1, 3), (1, 2)], "rcmsn")
    assert capacity_chain_oracle(c).deliveries == (3, 3, 2)
    with pytest.raises(EmptyNetwork):
        capacity_chain_oracle(Cmsn(3, (), "cmsn"))
    with pytest.raises(TooLarge):
        capacity_chain_oracle(Cmsn.from_pairs(13, [(1, 2)], "cmsn"))


def test_hops_oracle():
    c = Cmsn.from_pairs(4, [(1, 2), (2, 3), (3, 4)], "cmsn")
    assert min_hops_oracle(c, 1, 4) == 2
    assert min_hops_oracle(c, 3, 1) is None


def test_enumeration_counts():
    assert sum(1 for _ in all_rcmsns(3)) == 6
    assert sum(1 for _ in all_rcmsns(4)) == 720


@pytest.mark.parametrize("n", [3, 4])
def test_extremes_match_formulas(n):
    lo, hi, argmin, argmax = enumerate_rcmsn_extremes(n)
    assert lo == min_rcmsn(n) and hi == max_rcmsn(n)
    assert argmin.n == argmax.n == n
    with pytest.raises(TooLarge):
        enumerate_rcmsn_extremes(5)


def test_wiring_orders_mirror_pair():
    c = Cmsn.from_pairs(3, [(1, 2), (1, 3), (2, 3)], "rcmsn")
    orders = wiring_orders(c)
    assert (1, 2, 3) in orders and (3, 2, 1) in orders


def test_fm_limit():
    sys = LinearSystem(9)
    sys.add([1] + [0] * 8, GT)
    with pytest.raises(TooLarge):
        fm_feasibility(sys)
    small = LinearSystem(2)
    small.add((1, 0), GT)
    assert fm_feasibility(small)
