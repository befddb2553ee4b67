"""Exact minimum makespan by state-space search, and instance generators."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import DepthTwoDag
from .schedule import Schedule

__all__ = [
    "DEFAULT_LIMIT",
    "Exhaustive",
    "FamilyTooLarge",
    "InstanceFamily",
    "InstanceTooLarge",
    "Random",
    "enumerate_instances",
    "optimal_makespan",
    "random_instance",
]

DEFAULT_LIMIT = 16
# the search keys states on 64-bit masks with 12 bits reserved
_KERNEL_MAX = 40
EXHAUSTIVE_MAX_PAIRS = 20


class InstanceTooLarge(ValueError):
    pass


class FamilyTooLarge(ValueError):
    pass


def optimal_makespan(
    g: DepthTwoDag, limit: int = DEFAULT_LIMIT, *, natural: bool = False
) -> tuple[int, Schedule]:
    """Minimum makespan of ``g`` and one schedule achieving it.

    Breadth-first over (finished set, last slot's occupants up to processor
    swap); a slot may hold 0, 1 or 2 vertices.  With ``natural=True`` the
    search only admits schedules in which every non-isolated vertex of a
    lower level starts no later than every non-isolated vertex of a higher
    level.  Runtime grows roughly like 3^n; ``limit`` guards against
    accidental large calls.
    """
    n = g.n
    if n > limit or n > _KERNEL_MAX:
        raise InstanceTooLarge(f"{n} vertices exceeds the oracle limit {min(limit, _KERNEL_MAX)}")
    masks = [0] * n
    src, dst = g.edge_arrays()
    for u, v in zip(src.tolist(), dst.tolist()):
        masks[v] |= 1 << u
    not_later = None
    if natural:
        iso = g.isolated_mask()
        not_later = [0] * n
        below = 0
        for level in g.levels:
            live = [v for v in level if not iso[v]]
            for v in live:
                not_later[v] = below
            for v in live:
                below |= 1 << v
    best, witness = kernels.oracle_search(masks, not_later)
    times = np.zeros(n, dtype=np.int64)
    procs = np.zeros(n, dtype=np.int8)
    for v, t, p in witness:
        times[v] = t
        procs[v] = p + 1
    notes = {"method": "oracle-natural" if natural else "oracle"}
    return best, Schedule(times, procs, best, optimal_claimed=not natural, notes=notes)


# --------------------------------------------------------------------------
# instance families


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class Random:
    p: float
    seed: int = 0
    count: int | None = None


@dataclass(frozen=True)
class InstanceFamily:
    sizes: tuple[int, int, int]
    mode: Exhaustive | Random = Exhaustive()


def enumerate_instances(f: InstanceFamily) -> Iterator[DepthTwoDag]:
    """Every valid instance of the given level sizes, or a seeded random stream.

    Exhaustive order: the A×B edge mask is the outer loop, the B×C mask the
    inner one, both counting up from 0 with bit ``i*|B|+j`` (resp.
    ``j*|C|+k``) standing for the pair ``(a_i, b_j)`` (resp. ``(b_j, c_k)``).
    """
    na, nb, nc = f.sizes
    if min(f.sizes) < 0:
        raise ValueError("level sizes must be non-negative")
    if isinstance(f.mode, Random):
        rng = np.random.default_rng(f.mode.seed)
        counter = itertools.count() if f.mode.count is None else range(f.mode.count)
        for _ in counter:
            yield random_instance(f.sizes, f.mode.p, rng)
        return
    if na * nb + nb * nc > EXHAUSTIVE_MAX_PAIRS:
        raise FamilyTooLarge(
            f"|A||B|+|B||C| = {na * nb + nb * nc} exceeds {EXHAUSTIVE_MAX_PAIRS}"
        )
    ab = [(i, na + j) for i in range(na) for j in range(nb)]
    bc = [(na + j, na + nb + k) for j in range(nb) for k in range(nc)]
    ab_ok = [m for m in range(1 << len(ab)) if _covers(m, ab, range(na, na + nb), na > 0)]
    bc_ok = [m for m in range(1 << len(bc)) if _covers(m, bc, range(na + nb, na + nb + nc), True)]
    for m1 in ab_ok:
        e1 = [ab[i] for i in range(len(ab)) if m1 >> i & 1]
        for m2 in bc_ok:
            edges = e1 + [bc[i] for i in range(len(bc)) if m2 >> i & 1]
            yield DepthTwoDag.from_arrays(
                (na, nb, nc), [u for u, _ in edges], [v for _, v in edges]
            )


def _covers(mask: int, pairs: list[tuple[int, int]], heads: range, required: bool) -> bool:
    if not required:
        return True
    hit = {pairs[i][1] for i in range(len(pairs)) if mask >> i & 1}
    return all(h in hit for h in heads)


# exact Bernoulli sampling up to this many candidate pairs, sparse beyond
_DENSE_PAIRS = 1 << 22


def random_instance(
    sizes: tuple[int, int, int], p: float, rng: np.random.Generator
) -> DepthTwoDag:
    """One valid instance: a forced random predecessor per B and C vertex, plus
    every other A×B and B×C pair independently with probability ``p``.

    For very large levels the optional pairs are drawn as a binomial count of
    uniform pairs (duplicates merged), which matches independent sampling up
    to a negligible collision rate.
    """
    na, nb, nc = sizes
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    for lo, k_lo, hi, k_hi, forced in (
        (0, na, na, nb, na > 0),
        (na, nb, na + nb, nc, nb > 0),
    ):
        if k_lo == 0 or k_hi == 0:
            continue
        heads = np.arange(hi, hi + k_hi, dtype=np.int64)
        if forced:
            srcs.append(lo + rng.integers(0, k_lo, size=k_hi))
            dsts.append(heads)
        total = k_lo * k_hi
        if total <= _DENSE_PAIRS:
            pick = np.flatnonzero(rng.random(total) < p)
        else:
            pick = rng.integers(0, total, size=rng.binomial(total, p))
        srcs.append(lo + pick // k_hi)
        dsts.append(hi + pick % k_hi)
    src = np.concatenate(srcs) if srcs else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dsts) if dsts else np.zeros(0, dtype=np.int64)
    return DepthTwoDag.from_arrays(sizes, src, dst)
