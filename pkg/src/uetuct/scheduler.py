"""Level-by-level ("natural") two-processor schedules for depth-two DAGs.

Construction happens in reverse time: sinks C first, then B, then A.  Inside
each level the order is free, so only the two boundaries matter, and each
boundary is decided by a hinge: the last cells of one level and the first
cells of the next.  Vertices without any edge are set aside and poured into
idle cells at the end.

Two regimes:

* the middle level has at most :data:`COMPACT_MAX` live vertices: the
  boundary windows overlap, so the middle level is placed by exhaustive search
  over its cell layouts, and each outer window is filled by a matching
  check on neighbourhood types;
* otherwise the two boundaries are independent except that they must not
  claim the same middle vertex.  Each is solved with the hinge procedures,
  and conflicts are resolved by a small branch-and-bound over which
  middle vertices each boundary may use.

Both regimes return a schedule of minimum makespan among schedules that run
every non-isolated vertex of a level no later than any non-isolated vertex of
the next level.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from .graph import BipartiteView, DepthTwoDag, core_view
from .hinge import Case, HingeKind, Side, horizontal_hinge, vertical_hinge
from .schedule import Schedule, TraceEntry
from .verify import Violation, find_violations

__all__ = [
    "COMPACT_MAX",
    "InfeasibleAssembly",
    "reverse_schedule",
    "schedule_bipartite",
    "schedule_depth_two",
]

COMPACT_MAX = 4
SEARCH_DEPTH = 10
# extra idle cells tried by the compact path beyond the parity minimum
_COMPACT_IDLE_SPAN = 8

V, H = HingeKind.VERTICAL, HingeKind.HORIZONTAL


class InfeasibleAssembly(RuntimeError):
    """The assembled schedule broke a precedence or slot rule."""

    def __init__(self, violations: Sequence[Violation], trace: Sequence[TraceEntry]) -> None:
        self.violations = tuple(violations)
        self.trace = tuple(trace)
        first = self.violations[0] if self.violations else None
        super().__init__(
            f"assembled schedule is infeasible: {first.describe() if first else '?'}"
            f" (+{len(self.violations) - 1} more)"
        )


# --------------------------------------------------------------------------
# public entry points


def schedule_depth_two(g: DepthTwoDag) -> Schedule:
    """Feasible forward schedule of ``g``; see the module docstring for the guarantee."""
    iso = g.isolated_mask()
    x = _live(g.c_level, iso)
    y = _live(g.b_level, iso)
    z = _live(g.a_level, iso)
    vx = core_view(g, y, x) if x else None
    vz = core_view(g, y, z) if z else None
    rv, rt, rp, trace, method = _plan(x, y, z, vx, vz)
    times, procs = _finish(g.n, rv, rt, rp, np.flatnonzero(iso))
    src, dst = g.edge_arrays()
    s = Schedule(
        times,
        procs,
        trace=trace,
        optimal_claimed=True,
        notes={"method": method, "degenerate": g.degenerate},
    )
    bad = find_violations(s.times, s.processors, s.makespan, src, dst)
    if bad:
        raise InfeasibleAssembly(bad, trace)
    return s


def schedule_bipartite(v: BipartiteView) -> Schedule:
    """Forward schedule of a single layer (sources before sinks).

    The schedule vector is indexed by global vertex id; ids outside the view
    stay unassigned.
    """
    if not v.sources or not v.sinks:
        from .hinge import EmptySide

        raise EmptySide("view has no sources or no sinks")
    src, dst = v.edge_arrays()
    live_src = sorted(set(src.tolist()), key=v.sources.index)
    live_dst = sorted(set(dst.tolist()), key=v.sinks.index)
    seen = set(live_src) | set(live_dst)
    iso = [u for u in (*v.sources, *v.sinks) if u not in seen]
    core = BipartiteView.from_edges(live_src, live_dst, zip(src.tolist(), dst.tolist()))
    n = max([*v.sources, *v.sinks]) + 1
    x, y = list(core.sinks), list(core.sources)
    rv, rt, rp, trace, method = _plan(x, y, [], core if x else None, None)
    times, procs = _finish(n, rv, rt, rp, np.asarray(sorted(iso), dtype=np.int64))
    s = Schedule(times, procs, trace=trace, optimal_claimed=True, notes={"method": method})
    required = np.asarray([*v.sources, *v.sinks], dtype=np.int64)
    bad = find_violations(s.times, s.processors, s.makespan, src, dst, required)
    if bad:
        raise InfeasibleAssembly(bad, trace)
    return s


def reverse_schedule(s: Schedule, g: DepthTwoDag | None = None) -> Schedule:
    """Read ``s`` backwards in time (``t -> makespan + 1 - t``); processors are kept.

    ``g`` is accepted for symmetry with the other entry points and is only
    used to check the vertex count.
    """
    if g is not None and g.n != s.n:
        raise ValueError("schedule and graph disagree on the vertex count")
    times = np.where(s.times > 0, s.makespan + 1 - s.times, 0)
    return Schedule(
        times,
        s.processors,
        s.makespan,
        s.direction.flipped(),
        s.trace,
        optimal_claimed=s.optimal_claimed,
        fallback=s.fallback,
        notes=s.notes,
    )


# --------------------------------------------------------------------------
# shared plumbing


def _live(level: Sequence[int], iso: np.ndarray) -> list[int]:
    arr = np.asarray(level, dtype=np.int64)
    return arr[~iso[arr]].tolist() if len(arr) else []


def _finish(
    n: int, rv: np.ndarray, rt: np.ndarray, rp: np.ndarray, iso: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Pour isolated vertices into idle cells, then flip reverse time to forward."""
    core_t = int(rt.max(initial=0))
    if len(iso):
        occ = np.zeros((core_t + 1) * 2, dtype=bool)
        occ[:2] = True
        occ[rt * 2 + rp] = True
        free = np.flatnonzero(~occ)
        extra = len(iso) - len(free)
        if extra > 0:
            tail = np.arange(extra) + (core_t + 1) * 2
            free = np.concatenate([free, tail])
        cells = free[: len(iso)]
        rv = np.concatenate([rv, iso])
        rt = np.concatenate([rt, cells // 2])
        rp = np.concatenate([rp, cells % 2])
    total = int(rt.max(initial=0))
    times = np.zeros(n, dtype=np.int64)
    procs = np.zeros(n, dtype=np.int8)
    times[rv] = total + 1 - rt
    procs[rv] = rp + 1
    return times, procs


class _Hinge(NamedTuple):
    kind: HingeKind
    right: tuple[int | None, int | None]
    left: tuple[int | None, int | None]
    case: Case | None
    refined: bool
    view: BipartiteView

    @property
    def cost(self) -> int:
        return (self.left[0] is None) + (self.left[1] is None)

    def members(self) -> set[int]:
        return {b for b in self.left if b is not None}


def _hinge(view: BipartiteView, kind: HingeKind) -> _Hinge:
    sinks = view.sinks
    if not view.sources:
        right = (sinks[0], sinks[1]) if len(sinks) > 1 else (None, sinks[0])
        return _Hinge(kind, right, (None, None), None, False, view)
    res = vertical_hinge(view) if kind is V else horizontal_hinge(view)
    left = res.left.pair
    refined = False
    if kind is H and len(sinks) == 1 and left[0] is not None and left[1] is None:
        # a lone sink missing two sources can be flanked by both of them
        two = view.first_non_neighbors(sinks[0], 2)
        if len(two) == 2:
            left = (two[0], two[1])
            refined = True
    return _Hinge(kind, res.right.pair, left, res.case.case, refined, view)


def _entries(stage: int, h: _Hinge | None, applied: bool) -> list[TraceEntry]:
    if h is None:
        return []
    return [
        TraceEntry(stage, h.kind, Side.RIGHT, *h.right, h.case, applied, h.refined, h.view),
        TraceEntry(stage, h.kind, Side.LEFT, *h.left, h.case, applied, h.refined, h.view),
    ]


def _plan(
    x: list[int],
    y: list[int],
    z: list[int],
    vx: BipartiteView | None,
    vz: BipartiteView | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, tuple[TraceEntry, ...], str]:
    """Reverse-time cells ``(vertex, time, processor 0/1)`` for the non-isolated core."""
    empty = np.zeros(0, dtype=np.int64)
    if not y:
        return empty, empty, empty, (), "trivial"
    if len(y) <= COMPACT_MAX:
        h1 = _hinge(vx, V if len(x) % 2 == 0 else H) if vx is not None else None
        h2 = _hinge(vz, V if len(z) % 2 == 0 else H) if vz is not None else None
        trace = tuple(_entries(1, h1, False) + _entries(2, h2, False))
        rv, rt, rp = _compact(x, y, z, vx, vz)
        return rv, rt, rp, trace, "compact"
    h1, h2 = _search(x, y, z, vx, vz)
    trace = tuple(_entries(1, h1, True) + _entries(2, h2, True))
    rv, rt, rp = _assemble(x, y, z, h1, h2)
    return rv, rt, rp, trace, "hinge"


# --------------------------------------------------------------------------
# independent boundaries: hinge search and assembly


def _search(
    x: list[int], y: list[int], z: list[int], vx: BipartiteView | None, vz: BipartiteView | None
) -> tuple[_Hinge | None, _Hinge | None]:
    """Cheapest pair of boundary hinges that use disjoint middle vertices.

    A conflict on middle vertex ``b`` branches into "boundary 1 may not use
    b" and "boundary 2 may not use b".  Some optimal pair avoids every
    exclusion on at least one branch, so the search is exact; the depth cap
    only bounds pathological inputs.
    """
    kx = V if len(x) % 2 == 0 else H
    kz = V if len(z) % 2 == 0 else H
    rank = {b: i for i, b in enumerate(y)}
    best: list = [None]
    seen: set[tuple[frozenset[int], frozenset[int]]] = set()

    def visit(f1: frozenset[int], f2: frozenset[int], depth: int) -> None:
        if (f1, f2) in seen or depth > SEARCH_DEPTH:
            return
        seen.add((f1, f2))
        h1 = _hinge(vx.without(f1), kx) if vx is not None else None
        h2 = _hinge(vz.without(f2), kz) if vz is not None else None
        cost = (h1.cost if h1 else 0) + (h2.cost if h2 else 0)
        if best[0] is not None and cost >= best[0][0]:
            return
        clash = (h1.members() if h1 else set()) & (h2.members() if h2 else set())
        if not clash:
            best[0] = (cost, h1, h2)
            return
        b = min(clash, key=rank.__getitem__)
        visit(f1 | {b}, f2, depth + 1)
        visit(f1, f2 | {b}, depth + 1)

    visit(frozenset(), frozenset(), 0)
    if best[0] is None:
        raise RuntimeError("hinge search exhausted its depth budget")
    return best[0][1], best[0][2]


def _first_block(
    level: list[int], right: tuple[int | None, int | None], kind: HingeKind
) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[tuple[int, int]]]:
    """Cells of a level placed first (from slot 1) ending in its right hinge.

    Returns the level's ``(vertices, times, procs)`` plus the two cells of the
    neighbouring left hinge.
    """
    w1, w2 = right
    arr = np.asarray(level, dtype=np.int64)
    keep = np.ones(len(arr), dtype=bool)
    for w in (w1, w2):
        if w is not None:
            keep &= arr != w
    rest = arr[keep]
    if kind is V:
        t = len(level) // 2
        fixed = [(w1, t, 0), (w2, t, 1)]
        span = t
        hinge_cells = [(t + 1, 0), (t + 1, 1)]
        blocked = {(t, 0), (t, 1)}
    else:
        k = (len(level) + 1) // 2
        fixed = [(w2, k, 0)] + ([(w1, k - 1, 0)] if w1 is not None else [])
        span = k
        hinge_cells = [(k, 1), (k + 1, 1)]
        blocked = {(k, 0), (k, 1)} | ({(k - 1, 0)} if w1 is not None else set())
    cells = np.arange(2, (span + 1) * 2)
    for t, p in blocked:
        cells = cells[cells != t * 2 + p]
    cells = cells[: len(rest)]
    fv = np.asarray([f[0] for f in fixed], dtype=np.int64)
    ft = np.asarray([f[1] for f in fixed], dtype=np.int64)
    fp = np.asarray([f[2] for f in fixed], dtype=np.int64)
    return (
        np.concatenate([rest, fv]),
        np.concatenate([cells // 2, ft]),
        np.concatenate([cells % 2, fp]),
        hinge_cells,
    )


def _assemble(
    x: list[int], y: list[int], z: list[int], h1: _Hinge | None, h2: _Hinge | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_core = len(x) + len(y) + len(z)
    cost = (h1.cost if h1 else 0) + (h2.cost if h2 else 0)
    idle = cost + (n_core + cost) % 2
    vs: list[np.ndarray] = []
    ts: list[np.ndarray] = []
    ps: list[np.ndarray] = []
    taken: list[int] = []  # cell codes t*2+p that are used or deliberately idle
    placed: set[int] = set()

    def put(v: int | None, t: int, p: int) -> None:
        taken.append(t * 2 + p)
        if v is not None:
            vs.append(np.asarray([v]))
            ts.append(np.asarray([t]))
            ps.append(np.asarray([p]))
            placed.add(v)

    start = 1
    if h1 is not None:
        bv, bt, bp, cells = _first_block(x, h1.right, h1.kind)
        vs.append(bv), ts.append(bt), ps.append(bp)
        taken.extend((bt * 2 + bp)[bt >= cells[0][0]].tolist())
        for b, (t, p) in zip(h1.left, cells):
            put(b, t, p)
        start = min(t for t, _ in cells)
    if h2 is not None:
        top = (n_core + idle) // 2
        bv, bt, bp, cells = _first_block(z, h2.right, h2.kind)
        bt = top + 1 - bt
        vs.append(bv), ts.append(bt), ps.append(bp)
        taken.extend((bt * 2 + bp).tolist())
        for b, (t, p) in zip(h2.left, cells):
            put(b, top + 1 - t, p)
        end = top
    else:
        end = start + len(y) + 2
    ya = np.asarray(y, dtype=np.int64)
    rest = ya[~np.isin(ya, list(placed))] if placed else ya
    occ = np.zeros((end + 2) * 2, dtype=bool)
    occ[: start * 2] = True
    tk = np.asarray(taken, dtype=np.int64)
    occ[tk[tk < len(occ)]] = True
    free = np.flatnonzero(~occ)
    if len(free) < len(rest):
        free = np.concatenate([free, np.arange(len(occ), len(occ) + len(rest))])
    cells = free[: len(rest)]
    vs.append(rest), ts.append(cells // 2), ps.append(cells % 2)
    return np.concatenate(vs), np.concatenate(ts), np.concatenate(ps)


# --------------------------------------------------------------------------
# small middle level: exhaustive layout search


def _type_counts(masks: np.ndarray) -> dict[int, int]:
    kinds, counts = np.unique(masks, return_counts=True)
    return dict(zip(kinds.tolist(), counts.tolist()))


def _hall(forbid: tuple[int, ...], counts: dict[int, int]) -> bool:
    """Can every window cell get a distinct vertex whose type avoids the cell's mask?"""
    for r in range(1, len(forbid) + 1):
        for sub in itertools.combinations(forbid, r):
            fit = sum(c for t, c in counts.items() if any(t & f == 0 for f in sub))
            if fit < r:
                return False
    return True


def _match(
    window: list[tuple[tuple[int, int], int]], pool: dict[int, list[int]]
) -> dict[tuple[int, int], int]:
    """Distinct-vertex assignment for window cells (Hall already holds)."""
    out: dict[tuple[int, int], int] = {}
    used: set[int] = set()
    order = sorted(
        range(len(window)),
        key=lambda i: sum(len(vs) for t, vs in pool.items() if t & window[i][1] == 0),
    )

    def go(i: int) -> bool:
        if i == len(order):
            return True
        cell, forbid = window[order[i]]
        for t, vs in pool.items():
            if t & forbid:
                continue
            for v in vs:
                if v in used:
                    continue
                used.add(v)
                out[cell] = v
                if go(i + 1):
                    return True
                used.discard(v)
                del out[cell]
                break  # vertices of one type are interchangeable
        return False

    if not go(0):
        raise AssertionError("matching failed after Hall check")
    return out


def _pool(level: list[int], masks: np.ndarray, per_type: int) -> dict[int, list[int]]:
    arr = np.asarray(level, dtype=np.int64)
    out: dict[int, list[int]] = {}
    for t in np.unique(masks).tolist():
        out[t] = arr[masks == t][:per_type].tolist()
    return out


def _compact(
    x: list[int], y: list[int], z: list[int], vx: BipartiteView | None, vz: BipartiteView | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    bits = {b: 1 << i for i, b in enumerate(y)}
    mx = vx.sink_masks(bits) if x else np.zeros(0, dtype=np.int64)
    mz = vz.sink_masks(bits) if z else np.zeros(0, dtype=np.int64)
    cx, cz = _type_counts(mx), _type_counts(mz)
    # last X slot holds xl cells (lone cell on P1); first Z slot holds zf cells
    xl = 0 if not x else 2 - len(x) % 2
    zf = 0 if not z else 2 - len(z) % 2
    memo: dict[tuple[str, tuple[int, ...]], bool] = {}

    def side_ok(tag: str, forbid: tuple[int, ...], counts: dict[int, int]) -> bool:
        key = (tag, tuple(sorted(forbid)))
        if key not in memo:
            memo[key] = _hall(forbid, counts)
        return memo[key]

    base = xl + zf + len(y)
    for idle in range(base % 2, base % 2 + _COMPACT_IDLE_SPAN, 2):
        m = (base + idle) // 2
        if m < 1 or (x and z and m < 2):
            continue
        xcells = [(0, p) for p in range(xl)]
        xwin = xcells + ([(-1, 0), (-1, 1)] if len(x) > xl else [])
        for q in (0, 1) if zf == 1 else (None,):
            if zf == 0:
                zcells = []
            elif zf == 2:
                zcells = [(m - 1, 0), (m - 1, 1)]
            else:
                zcells = [(m - 1, q)]
            zwin = zcells + ([(m, 0), (m, 1)] if len(z) > zf else [])
            free = [
                (s, p)
                for s in range(m)
                for p in (0, 1)
                if (s, p) not in xcells and (s, p) not in zcells
            ]
            if len(free) != len(y) + idle:
                continue
            for gap in itertools.combinations(range(len(free)), idle):
                gaps = set(gap)
                ycells = [c for i, c in enumerate(free) if i not in gaps]
                for perm in itertools.permutations(y):
                    pos = list(zip(perm, ycells))
                    xf = tuple(
                        sum(
                            bits[b]
                            for b, (s2, p2) in pos
                            if s2 < s + (1 if p == p2 else 2)
                        )
                        for s, p in xwin
                    )
                    if x and not side_ok("x", xf, cx):
                        continue
                    zfm = tuple(
                        sum(
                            bits[b]
                            for b, (s2, p2) in pos
                            if s < s2 + (1 if p == p2 else 2)
                        )
                        for s, p in zwin
                    )
                    if z and not side_ok("z", zfm, cz):
                        continue
                    return _lay_out(x, z, mx, mz, xl, zf, m, xwin, xf, zwin, zfm, pos)
    raise RuntimeError("compact layout search found no schedule")


def _lay_out(x, z, mx, mz, xl, zf, m, xwin, xf, zwin, zfm, pos):
    vs: list[np.ndarray] = []
    ts: list[np.ndarray] = []
    ps: list[np.ndarray] = []
    last_x = (len(x) - xl) // 2 + 1 if x else 1
    off = last_x  # local slot s maps to global s + off
    if x:
        got = _match(list(zip(xwin, xf)), _pool(x, mx, len(xwin)))
        _extend(vs, ts, ps, got, off)
        xa = np.asarray(x, dtype=np.int64)
        rest = xa[~np.isin(xa, list(got.values()))]
        k = np.arange(len(rest))
        vs.append(rest), ts.append(1 + k // 2), ps.append(k % 2)
    for b, (s, p) in pos:
        vs.append(np.asarray([b])), ts.append(np.asarray([s + off])), ps.append(np.asarray([p]))
    if z:
        got = _match(list(zip(zwin, zfm)), _pool(z, mz, len(zwin)))
        _extend(vs, ts, ps, got, off)
        za = np.asarray(z, dtype=np.int64)
        rest = za[~np.isin(za, list(got.values()))]
        first = m + off + (1 if len(z) > zf else 0)
        k = np.arange(len(rest))
        vs.append(rest), ts.append(first + k // 2), ps.append(k % 2)
    return np.concatenate(vs), np.concatenate(ts), np.concatenate(ps)


def _extend(vs, ts, ps, got: dict[tuple[int, int], int], off: int) -> None:
    for (s, p), v in got.items():
        vs.append(np.asarray([v])), ts.append(np.asarray([s + off])), ps.append(np.asarray([p]))
