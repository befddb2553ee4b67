"""Pure-Python kernels.

These mirror the compiled versions in ``_kernels.pyx`` one for one and are
used whenever the extension is not built (or ``UETUCT_PURE_PYTHON`` is set).
"""

from __future__ import annotations

from collections.abc import Sequence

__all__ = ["oracle_search", "scan_shared_non_neighbor", "first_non_neighbors"]

_NONE = -1


def _canonical(done: int, l1: int, l2: int) -> tuple[int, int, int, bool]:
    # Machines are interchangeable, so (l1, l2) and (l2, l1) are the same state.
    if l2 < l1:
        return done, l2, l1, True
    return done, l1, l2, False


def oracle_search(
    pred_masks: Sequence[int], not_later: Sequence[int] | None = None
) -> tuple[int, list[tuple[int, int, int]]]:
    """Breadth-first search for a minimum-makespan UET-UCT two-machine schedule.

    ``pred_masks[v]`` is the bitmask of predecessors of ``v``.  If given,
    ``not_later[v]`` is a bitmask of vertices that must start no later than
    ``v`` (used to restrict the search to level-monotone schedules).  Returns
    the optimum and one witness as ``(vertex, time, processor)`` triples with
    1-based times and processors 0/1.
    """
    n = len(pred_masks)
    before = list(not_later) if not_later is not None else [0] * n
    full = (1 << n) - 1
    if n == 0:
        return 0, []
    start = (0, _NONE, _NONE)
    # child -> (parent, x, y, swapped) where x/y run on the parent's P1/P2
    parent: dict[tuple[int, int, int], tuple[tuple[int, int, int], int, int, bool] | None] = {
        start: None
    }
    frontier = [start]
    t = 0
    goal = None
    while goal is None:
        t += 1
        nxt: list[tuple[int, int, int]] = []
        for state in frontier:
            done, l1, l2 = state
            last1 = 0 if l1 == _NONE else 1 << l1
            last2 = 0 if l2 == _NONE else 1 << l2
            avail = [
                v
                for v in range(n)
                if not (done >> v) & 1 and pred_masks[v] & ~done == 0
            ]
            on1 = [_NONE] + [v for v in avail if not pred_masks[v] & last2]
            on2 = [_NONE] + [v for v in avail if not pred_masks[v] & last1]
            for x in on1:
                for y in on2:
                    if x == y and x != _NONE:
                        continue
                    nd = done
                    if x != _NONE:
                        nd |= 1 << x
                    if y != _NONE:
                        nd |= 1 << y
                    if (x != _NONE and before[x] & ~nd) or (y != _NONE and before[y] & ~nd):
                        continue
                    d, c1, c2, swapped = _canonical(nd, x, y)
                    child = (d, c1, c2)
                    if child in parent:
                        continue
                    parent[child] = (state, x, y, swapped)
                    if d == full:
                        goal = child
                        break
                    nxt.append(child)
                if goal is not None:
                    break
            if goal is not None:
                break
        frontier = nxt

    steps = []
    node = goal
    while parent[node] is not None:
        prev, x, y, swapped = parent[node]
        steps.append((x, y, swapped))
        node = prev
    steps.reverse()
    witness = []
    flipped = False
    for time, (x, y, swapped) in enumerate(steps, start=1):
        for v, proc in ((x, 0), (y, 1)):
            if v != _NONE:
                witness.append((v, time, proc ^ flipped))
        flipped ^= swapped
    return t, witness


def first_non_neighbors(
    order: Sequence[int], adjacent: set[int] | frozenset[int], k: int, skip: Sequence[int] = ()
) -> list[int]:
    """First ``k`` members of ``order`` outside ``adjacent`` and ``skip``."""
    out: list[int] = []
    if k <= 0:
        return out
    for v in order:
        if v in adjacent or v in skip:
            continue
        out.append(v)
        if len(out) == k:
            break
    return out


def scan_shared_non_neighbor(
    order: Sequence[int],
    single: Sequence[tuple[int, int]],
    multi: Sequence[tuple[int, frozenset[int]]],
) -> tuple[int, int, int] | None:
    """Marking pass of the horizontal hinge search.

    ``single`` lists ``(sink, its only non-neighbour)`` for sinks missing
    exactly one source; ``multi`` lists ``(sink, predecessors)`` for sinks
    missing two or more.  Sources are marked by the sinks that miss them, the
    single-miss sinks first.  The first time a multi-miss sink meets an
    already marked source, ``(marking sink, multi sink, source)`` is returned.
    Work is bounded by ``len(order)`` plus the predecessor lists touched,
    because every source is marked at most once before a collision.
    """
    mark: dict[int, int] = {}
    for w, b in single:
        mark.setdefault(b, w)
    for w, preds in multi:
        for b in order:
            if b in preds:
                continue
            owner = mark.get(b)
            if owner is not None:
                return owner, w, b
            mark[b] = w
    return None
