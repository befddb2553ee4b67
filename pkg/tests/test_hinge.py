import pytest
from hypothesis import given
from hypothesis import strategies as st

from uetuct.hinge import (
    Case,
    EmptySide,
    HingeKind,
    Parity,
    classify_left_hinge,
    even_tight_condition,
    horizontal_hinge,
    odd_tight_condition,
    slot_compatible,
    vertical_hinge,
)

from .conftest import complete, labels, view, views

B2, W2, W3 = ["b1", "b2"], ["w1", "w2"], ["w1", "w2", "w3"]


def run(proc, sources, sinks, edges):
    v, names = view(sources, sinks, edges)
    res = proc(v)
    return labels(res.right.pair, names), labels(res.left.pair, names), res.case.case


class TestVertical:
    def test_complete(self):
        assert run(vertical_hinge, B2, W2, complete(B2, W2)) == (
            ("w1", "w2"),
            ("i", "i"),
            Case.COMPLETE_BIPARTITE,
        )

    def test_one_missing_edge(self):
        edges = [e for e in complete(B2, W2) if e != ("b1", "w2")]
        assert run(vertical_hinge, B2, W2, edges) == (
            ("w1", "w2"),
            ("b1", "i"),
            Case.UNIQUE_DEFICIENT_SINK,
        )

    def test_matching(self):
        right, left, case = run(vertical_hinge, B2, W2, [("b1", "w1"), ("b2", "w2")])
        assert (right, left, case) == (("w1", "w2"), ("b1", "b2"), Case.REAL_PAIR)

    def test_common_missing_source(self):
        # two deficient sinks, both missing only b1
        right, left, case = run(vertical_hinge, ["b1", "b2", "b3"], W2, complete(["b2", "b3"], W2))
        assert case is Case.UNIQUE_DEFICIENT_SOURCE
        assert left == ("b1", "i")

    def test_kind(self):
        v, _ = view(B2, W2, complete(B2, W2))
        res = vertical_hinge(v)
        assert res.right.kind is res.left.kind is HingeKind.VERTICAL

    def test_empty_side(self):
        v, _ = view(B2, [], [])
        with pytest.raises(EmptySide):
            vertical_hinge(v)


class TestHorizontal:
    def test_complete_tie_break(self):
        assert run(horizontal_hinge, B2, W3, complete(B2, W3)) == (
            ("w1", "w2"),
            ("i", "i"),
            Case.COMPLETE_BIPARTITE,
        )

    def test_pairwise_disjoint(self):
        edges = complete(["b1"], W3) + [("b2", "w1"), ("b2", "w2")]
        assert run(horizontal_hinge, B2, W3, edges) == (
            ("w1", "w3"),
            ("i", "b2"),
            Case.PAIRWISE_DISJOINT,
        )

    def test_shared_non_neighbor(self):
        edges = complete(["b1", "b2"], W3) + [("b3", "w3")]
        assert run(horizontal_hinge, ["b1", "b2", "b3"], W3, edges) == (
            ("w1", "w2"),
            ("b3", "i"),
            Case.SHARED_NON_NEIGHBOR,
        )

    def test_single_sink(self):
        right, left, case = run(horizontal_hinge, B2, ["w1"], [("b1", "w1")])
        assert right == ("i", "w1")
        assert left == ("b2", "i") and case is Case.UNIQUE_DEFICIENT_SINK

    def test_real_pair(self):
        # w1 and w2 share two non-neighbours
        right, left, case = run(horizontal_hinge, ["b1", "b2", "b3"], W3, [("b1", "w1"), ("b1", "w2"), ("b2", "w3")])
        assert case is Case.REAL_PAIR
        assert "i" not in left


class TestClassify:
    def test_complete_even(self):
        v, _ = view(B2, W2, complete(B2, W2))
        assert classify_left_hinge(v, Parity.EVEN).case is Case.COMPLETE_BIPARTITE

    def test_unique_deficient_source(self):
        v, names = view(B2, W2, [("b2", "w1"), ("b2", "w2")])
        c = classify_left_hinge(v, "even")
        assert c.case is Case.UNIQUE_DEFICIENT_SOURCE
        assert [names[x] for x in c.witnesses] == ["b1"]

    def test_single_source_odd(self):
        # w2 and w3 share their one non-neighbour b1, and both have degree
        # 0 = |B| - 1, so the shared case applies rather than a real pair
        v, names = view(["b1"], W3, [("b1", "w1")])
        c = classify_left_hinge(v, Parity.ODD)
        assert c.case is Case.SHARED_NON_NEIGHBOR
        assert [names[x] for x in c.witnesses] == ["w2", "w3"]
        assert horizontal_hinge(v).case.case is Case.SHARED_NON_NEIGHBOR


class TestConditions:
    def test_even_condition(self):
        v, _ = view(B2, W2, [("b1", "w1"), ("b2", "w2")])
        assert even_tight_condition(v)
        v, _ = view(B2, W2, complete(B2, W2))
        assert not even_tight_condition(v)

    def test_odd_condition(self):
        v, _ = view(["b1", "b2", "b3"], W3, [("b1", "w1"), ("b1", "w2"), ("b2", "w3")])
        assert odd_tight_condition(v)
        v, _ = view(B2, W3, complete(B2, W3))
        assert not odd_tight_condition(v)


@given(views())
def test_vertical_matches_classifier(v):
    if v.n_sinks < 2:
        return
    assert vertical_hinge(v).case.case is classify_left_hinge(v, Parity.EVEN).case


@given(views())
def test_horizontal_matches_classifier(v):
    res = horizontal_hinge(v)
    assert res.case.case is classify_left_hinge(v, Parity.ODD).case


@given(views(), st.sampled_from([vertical_hinge, horizontal_hinge]))
def test_slot_compatible_and_deterministic(v, proc):
    if proc is vertical_hinge and v.n_sinks < 2:
        return
    res = proc(v)
    assert slot_compatible(v, res)
    assert proc(v) == res


@given(views())
def test_left_hinge_idle_iff_complete(v):
    if v.n_sinks >= 2:
        assert (vertical_hinge(v).left.imaginary_count == 2) == v.is_complete()
        assert (horizontal_hinge(v).left.imaginary_count == 2) == v.is_complete()
