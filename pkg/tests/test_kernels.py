"""The compiled kernels and the pure-Python fallback agree."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uetuct import _kernels_py as py
from uetuct import kernels

cy = pytest.importorskip("uetuct._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def random_masks(rng, n, p):
    masks = [0] * n
    for v in range(n):
        for u in range(v):
            if rng.random() < p:
                masks[v] |= 1 << u
    return masks


@pytest.mark.parametrize("seed", range(40))
def test_oracle_search_same_optimum(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 11)
    masks = random_masks(rng, n, rng.choice([0.1, 0.3, 0.6]))
    t_py, w_py = py.oracle_search(masks)
    t_cy, w_cy = cy.oracle_search(masks)
    assert t_py == t_cy
    assert sorted(v for v, _, _ in w_cy) == list(range(n))
    assert max(t for _, t, _ in w_cy) == t_cy


@pytest.mark.parametrize("seed", range(10))
def test_oracle_search_with_order_masks(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 10)
    masks = random_masks(rng, n, 0.3)
    cut = rng.randint(1, n - 1)
    low = (1 << cut) - 1
    not_later = [0] * cut + [low] * (n - cut)
    assert py.oracle_search(masks, not_later)[0] == cy.oracle_search(masks, not_later)[0]


@given(
    st.lists(st.integers(0, 30), unique=True, max_size=20),
    st.frozensets(st.integers(0, 30)),
    st.integers(0, 5),
    st.lists(st.integers(0, 30), max_size=4),
)
def test_first_non_neighbors(order, adjacent, k, skip):
    assert py.first_non_neighbors(order, adjacent, k, skip) == cy.first_non_neighbors(
        order, adjacent, k, skip
    )


@given(st.data())
def test_scan_shared_non_neighbor(data):
    order = data.draw(st.lists(st.integers(0, 8), unique=True, min_size=1, max_size=6))
    sinks = st.integers(100, 110)
    single = data.draw(st.lists(st.tuples(sinks, st.sampled_from(order)), max_size=5))
    multi = data.draw(
        st.lists(st.tuples(sinks, st.frozensets(st.sampled_from(order))), max_size=5)
    )
    assert py.scan_shared_non_neighbor(order, single, multi) == cy.scan_shared_non_neighbor(
        order, single, multi
    )
