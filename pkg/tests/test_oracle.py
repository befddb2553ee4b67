"""Exact optimum: hand-checked values and frozen histograms over small families."""

from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given

from uetuct.graph import DepthTwoDag, build_depth_two, reverse
from uetuct.oracle import (
    Exhaustive,
    FamilyTooLarge,
    InstanceFamily,
    InstanceTooLarge,
    Random,
    enumerate_instances,
    optimal_makespan,
    random_instance,
)
from uetuct.verify import check_feasible

from .conftest import complete, instances


def brute_force(g: DepthTwoDag, horizon: int) -> int:
    """Smallest T <= horizon admitting a feasible schedule, by plain backtracking."""
    order = [v for lv in g.levels for v in lv]
    preds = [g.preds(v) for v in range(g.n)]
    for T in range(1, horizon + 1):
        used: set[tuple[int, int]] = set()
        slot: dict[int, tuple[int, int]] = {}

        def place(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for t, p in product(range(1, T + 1), (1, 2)):
                if (t, p) in used:
                    continue
                if all(t >= slot[u][0] + (1 if slot[u][1] == p else 2) for u in preds[v]):
                    used.add((t, p))
                    slot[v] = (t, p)
                    if place(i + 1):
                        return True
                    used.discard((t, p))
                    del slot[v]
            return False

        if place(0):
            return T
    raise AssertionError("horizon too small")


def test_chain(chain3):
    assert optimal_makespan(chain3)[0] == 3


def test_k22():
    a, b = ["a1", "a2"], ["b1", "b2"]
    g = build_depth_two([a, b, []], complete(a, b))
    t, s = optimal_makespan(g)
    assert t == 3
    assert sorted(s.times.tolist()) == [1, 1, 3, 3]


def test_full_222(full222):
    assert optimal_makespan(full222)[0] == 5
    assert brute_force(full222, 6) == 5


def test_star_exceeds_half_plus_two():
    # a -> b1,b2,b3 -> c: n = 5, optimum 5
    b = ["b1", "b2", "b3"]
    g = build_depth_two([["a"], b, ["c"]], complete(["a"], b) + complete(b, ["c"]))
    assert optimal_makespan(g)[0] == 5
    assert brute_force(g, 6) == 5


@pytest.mark.parametrize(
    "sizes, count, hist",
    [
        ((1, 1, 1), 1, {3: 1}),
        ((1, 1, 2), 1, {4: 1}),
        ((2, 1, 1), 3, {3: 2, 4: 1}),
        ((2, 2, 2), 81, {3: 4, 4: 52, 5: 25}),
        ((1, 3, 1), 7, {4: 6, 5: 1}),
        ((3, 2, 2), 441, {4: 228, 5: 212, 6: 1}),
        ((2, 3, 2), 1323, {4: 792, 5: 530, 6: 1}),
        ((0, 2, 2), 9, {2: 2, 3: 7}),
        ((2, 2, 0), 9, {2: 2, 3: 7}),
        ((0, 3, 3), 343, {3: 243, 4: 100}),
    ],
)
def test_frozen_histograms(sizes, count, hist):
    got = Counter(optimal_makespan(g)[0] for g in enumerate_instances(InstanceFamily(sizes)))
    assert sum(got.values()) == count
    assert dict(got) == hist


def test_interleaved_levels_can_win():
    # c1, c2 depend only on b1, so they can run beside b2, b3
    a, b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    edges = complete(["a1", "a2"], ["b2", "b3"]) + [("a3", "b1"), ("b1", "c1"), ("b1", "c2")]
    g = build_depth_two([a, b, ["c1", "c2"]], edges)
    t, s = optimal_makespan(g)
    assert t == 4 and optimal_makespan(g, natural=True)[0] == 5
    assert s.times[g.index("c1")] < s.times[g.index("b3")] or s.times[g.index("c2")] < s.times[g.index("b3")]


def test_non_natural_optima_frozen():
    """Instances of sizes (3,3,2) whose optimum beats every level-by-level schedule."""
    gap = Counter()
    for g in enumerate_instances(InstanceFamily((3, 3, 2))):
        opt = optimal_makespan(g)[0]
        nat = optimal_makespan(g, natural=True)[0]
        assert nat >= opt
        gap[nat - opt] += 1
    assert gap == Counter({0: 16807 - 324, 1: 324})


def test_enumeration_order_and_validity():
    gs = list(enumerate_instances(InstanceFamily((2, 1, 1))))
    assert [g.edges_ab for g in gs] == [((0, 2),), ((1, 2),), ((0, 2), (1, 2))]


def test_family_too_large():
    with pytest.raises(FamilyTooLarge):
        next(enumerate_instances(InstanceFamily((3, 3, 4), Exhaustive())))


def test_instance_too_large():
    g = DepthTwoDag.from_arrays((17, 0, 0), [], [])
    with pytest.raises(InstanceTooLarge):
        optimal_makespan(g)
    assert optimal_makespan(g, limit=17)[0] == 9


def test_random_family_is_seeded():
    f = InstanceFamily((3, 4, 3), Random(0.5, seed=7, count=5))
    assert list(enumerate_instances(f)) == list(enumerate_instances(f))


def test_random_instance_large_is_valid():
    rng = np.random.default_rng(0)
    g = random_instance((3000, 3000, 3000), 0.0005, rng)
    assert g.in_degrees()[3000:].min() >= 1


@given(instances(max_level=3))
def test_witness_feasible_and_bounds(g):
    t, s = optimal_makespan(g)
    assert s.makespan == t
    assert check_feasible(g, s) == []
    assert (g.n + 1) // 2 <= t <= max(g.n, 1)


@given(instances(max_level=3))
def test_reversal_symmetry(g):
    assert optimal_makespan(g)[0] == optimal_makespan(reverse(g))[0]


@given(instances(max_level=3))
def test_natural_is_never_better(g):
    assert optimal_makespan(g, natural=True)[0] >= optimal_makespan(g)[0]


@given(instances(max_level=3))
def test_adding_an_edge_never_helps(g):
    src, dst = g.edge_arrays()
    present = set(g.edges)
    extra = [(u, v) for u in g.a_level for v in g.b_level if (u, v) not in present]
    extra += [(u, v) for u in g.b_level for v in g.c_level if (u, v) not in present]
    if not extra:
        return
    u, v = extra[0]
    sizes = tuple(len(x) for x in g.levels)
    h = DepthTwoDag.from_arrays(sizes, [*src.tolist(), u], [*dst.tolist(), v])
    assert optimal_makespan(h)[0] >= optimal_makespan(g)[0]
