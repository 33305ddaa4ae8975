from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msncap.constructions import grid, min_capacity_gmsn, three_slope_optimal
from msncap.core import Cmsn
from msncap.errors import BadParams, NotClassPartition, UnsupportedSlopeCount
from msncap.geometry import Arrangement, Line, cmsn_from_arrangement, draw_rgmsn, STABLE_IF_DISJOINT
from msncap.oracle import fm_feasibility
from msncap.realize import (
    CANDIDATES,
    NOT_REALIZABLE,
    REALIZABLE,
    SEARCH,
    class_order,
    order_system,
    parallel_classes,
    realize_rgmsn,
    realize_with_slope_set,
    realize_with_slopes,
)


def regenerates(res, cmsn):
    return cmsn_from_arrangement(res.witness).events == cmsn.events


def load_fixture(fixture_json):
    data = fixture_json("infeasible_slopes.json")
    return Cmsn.from_pairs(data["n"], data["events"], data["kind"]), data["classes"]


def test_parallel_classes_of_grid():
    c = cmsn_from_arrangement(grid(2, 3), STABLE_IF_DISJOINT)
    pc = parallel_classes(c)
    assert pc.classes == ((1, 2), (3, 4, 5))
    assert pc.of_sensor == (0, 0, 1, 1, 1)
    assert len(pc) == 2


def test_parallel_classes_need_cliques():
    # 1 misses 2 and 3, but 2 meets 3
    c = Cmsn.from_pairs(3, [(2, 3)], "cmsn")
    with pytest.raises(NotClassPartition):
        parallel_classes(c)


def test_two_classes():
    c = cmsn_from_arrangement(grid(3, 2), STABLE_IF_DISJOINT)
    res = realize_rgmsn(c, 2)
    assert res.decision == REALIZABLE and regenerates(res, c)
    assert realize_rgmsn(c, 4)


def test_class_count_rejection():
    c = cmsn_from_arrangement(min_capacity_gmsn(4))
    res = realize_rgmsn(c, 3)
    assert res.decision == NOT_REALIZABLE and res.certificate_note.startswith("class count:")


def test_wiring_rejection_stage():
    c = Cmsn.from_pairs(4, [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)], "rcmsn")
    res = realize_rgmsn(c, 4)
    assert not res and res.certificate_note.startswith("wiring:")


def test_sequential_star_is_realizable():
    # every pair in lexicographic order; slopes 0, 1, 2, 3 realize it
    star = Cmsn.from_pairs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], "rcmsn")
    res = realize_rgmsn(star, 4)
    assert res and regenerates(res, star)
    assert cmsn_from_arrangement(Arrangement([Line(0, -9), Line(1, -2), Line(2, 0), Line(3, 0)])).events == star.events


def test_fixed_slopes_fixture(fixture_json):
    c, classes = load_fixture(fixture_json)
    slopes = [Fraction(-3), Fraction(-1), Fraction(1)]
    both = (classes, [2 - k for k in classes])
    for assign in both:
        assert not realize_with_slopes(c, slopes, assign)
        assert not fm_feasibility(order_system(c, [slopes[k] for k in assign]))
    assert not realize_with_slope_set(c, slopes)
    res = realize_rgmsn(c, 3)
    assert res and regenerates(res, c)


def test_fixed_slopes_wrong_classes():
    c = cmsn_from_arrangement(grid(2, 2), STABLE_IF_DISJOINT)
    res = realize_with_slopes(c, [0, 1], [0, 1, 0, 1])
    assert not res and "class assignment" in res.certificate_note
    with pytest.raises(BadParams):
        realize_with_slopes(c, [0, 0], [0, 0, 1, 1])
    with pytest.raises(BadParams):
        realize_with_slopes(c, [0, 1], [0, 0, 1])


def test_vertical_class():
    # a vertical third class: the witness is sheared into a steep finite slope
    c = cmsn_from_arrangement(three_slope_optimal(7), STABLE_IF_DISJOINT)
    ranks = class_order(c)
    assert isinstance(ranks, list)
    found = False
    for layout in ([Fraction(0), Fraction(1), None], [None, Fraction(0), Fraction(1)]):
        for assign in (ranks, [2 - r for r in ranks]):
            res = realize_with_slopes(c, layout, assign)
            if res:
                found = True
                assert all(ln.slope is not None for ln in res.witness.lines)
                assert regenerates(res, c)
    assert found


def test_slope_set_with_vertical():
    c = cmsn_from_arrangement(grid(2, 3), STABLE_IF_DISJOINT)
    res = realize_with_slope_set(c, [Fraction(0), None])
    assert res and regenerates(res, c)


def test_monotone_in_slope_budget():
    for trial in range(20):
        _, c, classes = draw_rgmsn(7, 3, 11, trial)
        if not c.events:
            continue
        k = len(set(classes))
        assert not realize_rgmsn(c, k - 1) if k > 1 else True
        for s in range(k, 5):
            assert realize_rgmsn(c, s)


@pytest.mark.parametrize("s", [3, 4])
def test_methods_are_sound(s):
    solved = 0
    for trial in range(8):
        _, c, classes = draw_rgmsn(7, s, 5, trial)
        if len(set(classes)) < 3:
            continue
        assert realize_rgmsn(c, s, method=SEARCH)
        res = realize_rgmsn(c, s, method=CANDIDATES)
        if res:
            solved += 1
            assert regenerates(res, c)
            assert len({ln.slope for ln in res.witness.lines}) <= s
    assert solved


def test_candidates_cover_window_above_steepest_fixed_slope():
    # the admissible third slopes form (1, 2) after normalizing the others to 0 and 1
    _, c, _ = draw_rgmsn(7, 3, 5, 4)
    assert realize_rgmsn(c, 3, method=CANDIDATES)


@settings(max_examples=25)
@given(st.integers(3, 10), st.integers(2, 4), st.integers(0, 2**32))
def test_generated_networks_are_realized(n, s, seed):
    _, c, classes = draw_rgmsn(n, s, seed)
    if not c.events:
        return
    res = realize_rgmsn(c, s)
    assert res and regenerates(res, c)
    assert len({ln.slope for ln in res.witness.lines}) <= s


def test_bad_arguments():
    c = cmsn_from_arrangement(grid(2, 2), STABLE_IF_DISJOINT)
    with pytest.raises(UnsupportedSlopeCount):
        realize_rgmsn(c, 5)
    with pytest.raises(BadParams):
        realize_rgmsn(c, 0)
    with pytest.raises(BadParams):
        realize_rgmsn(c, 3, method="magic")
