"""Wall-clock scaling of the scheduler on random instances."""

from __future__ import annotations

import time
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .oracle import random_instance
from .scheduler import schedule_depth_two

__all__ = ["BenchRow", "CSV_HEADER", "edge_probability", "level_sizes", "run_bench"]

CSV_HEADER = "size,instances,total_ms,ms_per_instance,edges"
# edges per vertex targeted when no probability is given
EDGE_RATIO = 4


@dataclass(frozen=True)
class BenchRow:
    size: int
    instances: int
    total_ms: float
    edges: int

    @property
    def ms_per_instance(self) -> float:
        return self.total_ms / self.instances

    def csv(self) -> str:
        return f"{self.size},{self.instances},{self.total_ms:.3f},{self.ms_per_instance:.3f},{self.edges}"


def level_sizes(n: int) -> tuple[int, int, int]:
    """Split ``n`` into three near-equal levels (A gets the remainder last)."""
    k = n // 3
    return (n - 2 * k, k, k)


def edge_probability(sizes: tuple[int, int, int], ratio: float = EDGE_RATIO) -> float:
    """Pair probability giving about ``ratio * n`` edges including the forced ones."""
    na, nb, nc = sizes
    pairs = na * nb + nb * nc
    forced = (nb if na else 0) + (nc if nb else 0)
    if pairs == 0:
        return 0.0
    return float(min(1.0, max(0.0, (ratio * sum(sizes) - forced) / pairs)))


def run_bench(
    sizes: Iterable[int], p: float | None = None, seed: int = 0, instances: int = 1
) -> list[BenchRow]:
    """Time :func:`schedule_depth_two` alone; instance generation is excluded.

    ``edges`` is the total edge count over the instances of a size, which is
    the number of edges the scheduler visits.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        levels = level_sizes(n)
        prob = edge_probability(levels) if p is None else p
        total = 0.0
        edges = 0
        for _ in range(instances):
            g = random_instance(levels, prob, rng)
            t0 = time.perf_counter()
            schedule_depth_two(g)
            total += time.perf_counter() - t0
            edges += g.m
        rows.append(BenchRow(n, instances, total * 1000.0, edges))
    return rows
