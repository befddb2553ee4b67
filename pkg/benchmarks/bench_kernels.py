"""Compiled kernels against the pure-Python fallback.

Times the exact search on random depth-two instances, then the full
scheduler at a large size with each backend forced by environment variable
(backend selection happens at import, so that part runs in subprocesses).

    python benchmarks/bench_kernels.py [--n 14] [--count 20] [--big 100000]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from uetuct import _kernels_py
from uetuct.bench import level_sizes
from uetuct.oracle import random_instance

try:
    from uetuct import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None

_SCHEDULER_SNIPPET = """
import time, numpy as np
from uetuct.bench import edge_probability, level_sizes
from uetuct.kernels import BACKEND
from uetuct.oracle import random_instance
from uetuct.scheduler import schedule_depth_two
n = {n}
sizes = level_sizes(n)
g = random_instance(sizes, edge_probability(sizes), np.random.default_rng(0))
t0 = time.perf_counter()
schedule_depth_two(g)
print(BACKEND, (time.perf_counter() - t0) * 1000)
"""


def masks_of(g):
    masks = [0] * g.n
    src, dst = g.edge_arrays()
    for u, v in zip(src.tolist(), dst.tolist()):
        masks[v] |= 1 << u
    return masks


def time_oracle(mod, batch):
    t0 = time.perf_counter()
    for m in batch:
        mod.oracle_search(m)
    return (time.perf_counter() - t0) * 1000


def time_scheduler(n: int, pure: bool) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("UETUCT_PURE_PYTHON", None)
    if pure:
        env["UETUCT_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", _SCHEDULER_SNIPPET.format(n=n)],
        env=env,
        check=True,
        capture_output=True,
        text=True,
    ).stdout.split()
    return out[0], float(out[1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=14, help="vertices per oracle instance")
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--big", type=int, default=100_000, help="scheduler instance size")
    a = ap.parse_args()

    rng = np.random.default_rng(1)
    batch = [masks_of(random_instance(level_sizes(a.n), 0.4, rng)) for _ in range(a.count)]
    print("kernel,backend,ms")
    py_ms = time_oracle(_kernels_py, batch)
    print(f"oracle_search(n={a.n} x{a.count}),python,{py_ms:.1f}")
    if _kernels_cy is not None:
        cy_ms = time_oracle(_kernels_cy, batch)
        print(f"oracle_search(n={a.n} x{a.count}),cython,{cy_ms:.1f}")
        print(f"# oracle speedup {py_ms / cy_ms:.1f}x")
    for pure in (True, False):
        backend, ms = time_scheduler(a.big, pure)
        print(f"schedule_depth_two(n={a.big}),{backend},{ms:.1f}")


if __name__ == "__main__":
    main()
