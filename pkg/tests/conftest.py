from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from uetuct.graph import BipartiteView, DepthTwoDag, build_depth_two

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=600, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def view(sources, sinks, edges):
    """Bipartite view over names; ids are assigned sources first, then sinks."""
    names = [*sources, *sinks]
    idx = {s: i for i, s in enumerate(names)}
    v = BipartiteView.from_edges(
        [idx[s] for s in sources], [idx[w] for w in sinks], [(idx[u], idx[w]) for u, w in edges]
    )
    return v, names


def complete(left, right):
    return [(u, w) for u in left for w in right]


def labels(pair, names):
    return tuple("i" if x is None else names[x] for x in pair)


@pytest.fixture
def chain3() -> DepthTwoDag:
    return build_depth_two([["a"], ["b"], ["c"]], [("a", "b"), ("b", "c")])


@pytest.fixture
def full222() -> DepthTwoDag:
    a, b, c = ["a1", "a2"], ["b1", "b2"], ["c1", "c2"]
    return build_depth_two([a, b, c], complete(a, b) + complete(b, c))


@st.composite
def instances(draw, max_level: int = 4, allow_empty: bool = True) -> DepthTwoDag:
    """Valid depth-two instances; every B (when A is non-empty) and every C gets a predecessor."""
    lo = 0 if allow_empty else 1
    na = draw(st.integers(lo, max_level))
    nb = draw(st.integers(lo, max_level))
    nc = 0 if nb == 0 else draw(st.integers(lo, max_level))
    src, dst = [], []
    for lo_off, k_lo, hi_off, k_hi, forced in ((0, na, na, nb, na > 0), (na, nb, na + nb, nc, True)):
        if k_hi == 0 or k_lo == 0:
            continue
        bits = draw(st.lists(st.booleans(), min_size=k_lo * k_hi, max_size=k_lo * k_hi))
        grid = np.array(bits, dtype=bool).reshape(k_lo, k_hi)
        if forced:
            for j in range(k_hi):
                if not grid[:, j].any():
                    grid[draw(st.integers(0, k_lo - 1)), j] = True
        for i, j in zip(*np.nonzero(grid)):
            src.append(lo_off + int(i))
            dst.append(hi_off + int(j))
    return DepthTwoDag.from_arrays((na, nb, nc), src, dst)


@st.composite
def views(draw, max_side: int = 4):
    ns = draw(st.integers(1, max_side))
    nw = draw(st.integers(1, max_side))
    bits = draw(st.lists(st.booleans(), min_size=ns * nw, max_size=ns * nw))
    edges = [(i, ns + j) for i in range(ns) for j in range(nw) if bits[i * nw + j]]
    return BipartiteView.from_edges(list(range(ns)), list(range(ns, ns + nw)), edges)


# --------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(key: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE[key] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0].rstrip("abcdefgh")), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
