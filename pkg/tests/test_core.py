import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from msncap.core import Cmsn, absolute_capacity, capacity, deliveries, hop_table, min_hops, validate
from msncap.errors import DuplicatePair, EmptyNetwork, EventIndexOutOfRange, NotExhaustive, OutOfRangeId
from msncap.formulas import max_rcmsn, min_rcmsn
from msncap.oracle import capacity_chain_oracle, min_hops_oracle

N3 = Cmsn.from_pairs(3, [(2, 3), (1, 3), (1, 2)], "rcmsn")


@st.composite
def cmsns(draw, max_n=6, restricted=False):
    n = draw(st.integers(2, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    if restricted:
        chosen = draw(st.permutations(pairs))
    else:
        chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    return Cmsn.from_pairs(n, chosen, "rcmsn" if restricted else "cmsn")


def test_validate_examples():
    validate(N3)
    with pytest.raises(DuplicatePair):
        validate(Cmsn.from_pairs(3, [(1, 2), (1, 2), (1, 3)], "cmsn"))
    with pytest.raises(NotExhaustive):
        validate(Cmsn.from_pairs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)], "rcmsn"))
    with pytest.raises(OutOfRangeId):
        validate(Cmsn.from_pairs(3, [(1, 4)], "cmsn"))


def test_deliveries_examples():
    rep = deliveries(Cmsn.from_pairs(2, [(1, 2)]))
    assert rep.deliveries == (2,) and rep.capacity == 1
    rep = deliveries(N3)
    assert rep.deliveries == (3, 3, 2)
    assert rep.capacity == Fraction(8, 9) == rep.absolute_capacity


def test_empty_network():
    with pytest.raises(EmptyNetwork):
        capacity(Cmsn(3, (), "cmsn"))


def test_min_hops_examples():
    c = Cmsn.from_pairs(3, [(1, 2), (2, 3)], "cmsn")
    assert min_hops(c, 1, 1) == 0
    assert min_hops(c, 1, 3) == 1
    assert min_hops(c, 2, 1) is None
    with pytest.raises(EventIndexOutOfRange):
        min_hops(c, 3, 1)
    with pytest.raises(IndexError):
        min_hops(c, 0, 1)


@given(cmsns())
def test_sweep_matches_chain_oracle(c):
    assert deliveries(c) == capacity_chain_oracle(c)


@given(cmsns(max_n=5))
def test_hops_match_bruteforce(c):
    table = hop_table(c)
    for k in range(len(c.events)):
        for x in range(1, c.n + 1):
            want = min_hops_oracle(c, k + 1, x)
            assert min_hops(c, k + 1, x) == want == table[k][x]


@given(cmsns(max_n=7, restricted=True))
def test_rcmsn_bounds(c):
    cap = capacity(c)
    assert min_rcmsn(c.n) <= cap <= max_rcmsn(c.n)
    assert cap == absolute_capacity(c)
    assert deliveries(c).deliveries[-1] == 2


@given(cmsns(), st.randoms(use_true_random=False))
def test_relabel_invariance(c, rnd):
    perm = list(range(1, c.n + 1))
    rnd.shuffle(perm)
    assert capacity(c.relabel(perm)) == capacity(c)


@given(cmsns(max_n=7, restricted=True), st.randoms(use_true_random=False))
def test_disjoint_swap_invariance(c, rnd):
    ks = [k for k in range(len(c.events) - 1) if not set(c.events[k]) & set(c.events[k + 1])]
    if not ks:
        return
    k = rnd.choice(ks)
    ev = list(c.events)
    ev[k], ev[k + 1] = ev[k + 1], ev[k]
    a, b = deliveries(c), deliveries(Cmsn(c.n, tuple(ev), c.kind))
    assert a.total == b.total
    assert all(a.deliveries[j] == b.deliveries[j] for j in range(len(ev)) if j not in (k, k + 1))


def test_every_delivery_at_least_two():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 8)
        pairs = list(combinations(range(1, n + 1), 2))
        rng.shuffle(pairs)
        assert min(deliveries(Cmsn(n, tuple(pairs), "rcmsn")).deliveries) >= 2
