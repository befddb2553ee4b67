"""Depth-two task graphs and the bipartite layer views the hinge code works on.

Vertex ids are dense integers ``0..n-1``.  ``build_depth_two`` numbers the
declared levels A, then B, then C, so a freshly built graph has contiguous
level blocks; ``reverse`` keeps ids and only reshuffles level membership.
Edges are stored as two parallel ``int64`` arrays and the adjacency is a lazily
built CSR, so instances with millions of edges stay cheap to hold and query.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable, Sequence

import numpy as np

from . import kernels

__all__ = [
    "BackwardEdge",
    "BipartiteView",
    "CycleDetected",
    "DepthExceeded",
    "DepthTwoDag",
    "DuplicateName",
    "GraphError",
    "IntraLevelEdge",
    "Layer",
    "Level",
    "OrphanMiddle",
    "OrphanSink",
    "SkipLevelEdge",
    "UnknownEndpoint",
    "bipartite_view",
    "build_depth_two",
    "infer_levels",
    "reverse",
]


class Level(enum.IntEnum):
    A = 0
    B = 1
    C = 2


class Layer(enum.Enum):
    AB = "AB"
    BC = "BC"


# --------------------------------------------------------------------------
# errors


class GraphError(ValueError):
    """Instance validation failure.

    ``subjects`` names the offending vertices (or the two endpoints of the
    offending edge); ``edge_index`` is the position of that edge in the input
    list, which the parsers translate into a source location.
    """

    def __init__(
        self,
        message: str,
        subjects: Sequence[str] = (),
        *,
        edge_index: int | None = None,
        location: str | None = None,
    ) -> None:
        self.message = message
        self.subjects = tuple(subjects)
        self.edge_index = edge_index
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")

    def at(self, location: str) -> GraphError:
        """Copy of this error tagged with a source location."""
        return type(self)(
            self.message, self.subjects, edge_index=self.edge_index, location=location
        )


class DuplicateName(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class IntraLevelEdge(GraphError):
    pass


class SkipLevelEdge(GraphError):
    pass


class BackwardEdge(GraphError):
    pass


class OrphanSink(GraphError):
    pass


class OrphanMiddle(GraphError):
    pass


class DepthExceeded(GraphError):
    pass


class CycleDetected(GraphError):
    pass


# --------------------------------------------------------------------------
# CSR helpers


def _csr(keys: np.ndarray, vals: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row pointer and column array grouping ``vals`` by ``keys`` (stable)."""
    order = np.argsort(keys, kind="stable")
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(keys, minlength=n), out=ptr[1:])
    return ptr, vals[order]


def _gather(
    ptr: np.ndarray, idx: np.ndarray, rows: np.ndarray, keep: np.ndarray | None
) -> tuple[np.ndarray, np.ndarray]:
    """Sub-CSR for ``rows`` (in that order), optionally filtering columns by ``keep``."""
    starts = ptr[rows]
    counts = ptr[rows + 1] - starts
    total = int(counts.sum())
    if total:
        shift = np.repeat(starts - (np.cumsum(counts) - counts), counts)
        cols = idx[shift + np.arange(total, dtype=np.int64)]
    else:
        cols = idx[:0]
    if keep is not None and total:
        mask = keep[cols]
        owner = np.repeat(np.arange(len(rows), dtype=np.int64), counts)
        counts = np.bincount(owner[mask], minlength=len(rows)).astype(np.int64)
        cols = cols[mask]
    out = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(counts, out=out[1:])
    return out, cols


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


# --------------------------------------------------------------------------
# the graph


class DepthTwoDag:
    """Validated three-level DAG with edges only A→B and B→C.

    Construct through :func:`build_depth_two` (names) or
    :meth:`from_arrays` (integer edge arrays, used by generators).
    Instances are immutable.
    """

    __slots__ = (
        "_names",
        "_levels",
        "_level",
        "_src",
        "_dst",
        "_index",
        "_pred",
        "_succ",
        "_relaxed",
    )

    def __init__(
        self,
        names: tuple[str, ...],
        levels: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]],
        src: np.ndarray,
        dst: np.ndarray,
        *,
        relaxed: bool = False,
    ) -> None:
        # Trusted constructor: callers have already validated.
        n = len(names)
        self._names = names
        self._levels = levels
        level = np.empty(n, dtype=np.int8)
        for lv, ids in enumerate(levels):
            level[list(ids)] = lv
        self._level = _frozen(level)
        self._src = _frozen(src)
        self._dst = _frozen(dst)
        self._index: dict[str, int] | None = None
        self._pred: tuple[np.ndarray, np.ndarray] | None = None
        self._succ: tuple[np.ndarray, np.ndarray] | None = None
        self._relaxed = relaxed

    @classmethod
    def from_arrays(
        cls,
        sizes: tuple[int, int, int],
        src: Sequence[int] | np.ndarray,
        dst: Sequence[int] | np.ndarray,
        names: Sequence[str] | None = None,
    ) -> DepthTwoDag:
        """Build from level sizes and integer edge arrays.

        Vertices ``0..na-1`` form A, the next ``nb`` form B, the rest C.
        Default names are ``a1.. b1.. c1..``.
        """
        na, nb, nc = sizes
        n = na + nb + nc
        if names is None:
            names = _default_names(na, nb, nc)
        elif len(names) != n:
            raise ValueError("names must cover every vertex")
        levels = (
            tuple(range(na)),
            tuple(range(na, na + nb)),
            tuple(range(na + nb, n)),
        )
        src_a = np.asarray(src, dtype=np.int64).reshape(-1)
        dst_a = np.asarray(dst, dtype=np.int64).reshape(-1)
        if len(src_a) != len(dst_a):
            raise ValueError("edge arrays differ in length")
        if len(src_a) and (min(src_a.min(), dst_a.min()) < 0 or max(src_a.max(), dst_a.max()) >= n):
            raise ValueError("edge endpoint out of range")
        names_t = tuple(names)
        if len(set(names_t)) != n:
            _raise_duplicate(names_t)
        return _validated(names_t, levels, src_a, dst_a)

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._names)

    @property
    def m(self) -> int:
        return len(self._src)

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def levels(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return self._levels

    @property
    def a_level(self) -> tuple[int, ...]:
        return self._levels[0]

    @property
    def b_level(self) -> tuple[int, ...]:
        return self._levels[1]

    @property
    def c_level(self) -> tuple[int, ...]:
        return self._levels[2]

    @property
    def level_array(self) -> np.ndarray:
        """Level (0, 1, 2) of every vertex, read-only."""
        return self._level

    @property
    def degenerate(self) -> bool:
        """True when A or C is empty (depth-one or single-level instance)."""
        return not self._levels[0] or not self._levels[2]

    @property
    def relaxed(self) -> bool:
        """True for reversed graphs whose B-vertices may lack A-predecessors."""
        return self._relaxed

    def level_of(self, v: int) -> Level:
        return Level(int(self._level[v]))

    def name(self, v: int) -> str:
        return self._names[v]

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self._names)}
        return self._index[name]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Read-only ``(src, dst)`` arrays in stored order."""
        return self._src, self._dst

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self._src.tolist(), self._dst.tolist()))

    @property
    def edges_ab(self) -> tuple[tuple[int, int], ...]:
        sel = self._level[self._src] == self._level[self._dst] - 1
        sel &= self._level[self._src] == 0
        return tuple(zip(self._src[sel].tolist(), self._dst[sel].tolist()))

    @property
    def edges_bc(self) -> tuple[tuple[int, int], ...]:
        sel = self._level[self._src] == 1
        return tuple(zip(self._src[sel].tolist(), self._dst[sel].tolist()))

    # -- adjacency -------------------------------------------------------

    def pred_csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._pred is None:
            ptr, idx = _csr(self._dst, self._src, self.n)
            self._pred = (_frozen(ptr), _frozen(idx))
        return self._pred

    def succ_csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._succ is None:
            ptr, idx = _csr(self._src, self._dst, self.n)
            self._succ = (_frozen(ptr), _frozen(idx))
        return self._succ

    def preds(self, v: int) -> tuple[int, ...]:
        ptr, idx = self.pred_csr()
        return tuple(idx[ptr[v] : ptr[v + 1]].tolist())

    def succs(self, v: int) -> tuple[int, ...]:
        ptr, idx = self.succ_csr()
        return tuple(idx[ptr[v] : ptr[v + 1]].tolist())

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.pred_csr()[0])

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.succ_csr()[0])

    def isolated_mask(self) -> np.ndarray:
        """Vertices with no incident edge at all."""
        deg = np.bincount(self._src, minlength=self.n) + np.bincount(self._dst, minlength=self.n)
        return deg == 0

    # -- misc --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DepthTwoDag):
            return NotImplemented
        return (
            self._names == other._names
            and self._levels == other._levels
            and np.array_equal(self._src, other._src)
            and np.array_equal(self._dst, other._dst)
        )

    def __hash__(self) -> int:
        return hash((self._names, self._levels, self._src.tobytes(), self._dst.tobytes()))

    def __repr__(self) -> str:
        na, nb, nc = (len(x) for x in self._levels)
        return f"DepthTwoDag(|A|={na}, |B|={nb}, |C|={nc}, m={self.m})"


def _default_names(na: int, nb: int, nc: int) -> list[str]:
    return (
        [f"a{i}" for i in range(1, na + 1)]
        + [f"b{i}" for i in range(1, nb + 1)]
        + [f"c{i}" for i in range(1, nc + 1)]
    )


def _raise_duplicate(names: Sequence[str]) -> None:
    seen: set[str] = set()
    for s in names:
        if s in seen:
            raise DuplicateName(f"vertex name {s!r} declared twice", (s,))
        seen.add(s)


def _validated(
    names: tuple[str, ...],
    levels: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]],
    src: np.ndarray,
    dst: np.ndarray,
    *,
    relaxed: bool = False,
) -> DepthTwoDag:
    n = len(names)
    level = np.empty(n, dtype=np.int8)
    for lv, ids in enumerate(levels):
        level[list(ids)] = lv
    if len(src):
        lu = level[src]
        lv_ = level[dst]
        gap = lv_.astype(np.int16) - lu
        bad = gap != 1
        if bad.any():
            i = int(np.argmax(bad))
            u, v = names[src[i]], names[dst[i]]
            g = int(gap[i])
            if g == 0:
                raise IntraLevelEdge(f"edge {u}->{v} stays inside one level", (u, v), edge_index=i)
            if abs(g) == 2:
                raise SkipLevelEdge(f"edge {u}->{v} joins A and C directly", (u, v), edge_index=i)
            raise BackwardEdge(f"edge {u}->{v} points to an earlier level", (u, v), edge_index=i)
        # duplicate edges collapse to their first occurrence
        key = src * n + dst
        _, first = np.unique(key, return_index=True)
        if len(first) < len(src):
            keep = np.sort(first)
            src = src[keep]
            dst = dst[keep]
    indeg = np.bincount(dst, minlength=n)
    for c in levels[2]:
        if indeg[c] == 0:
            raise OrphanSink(f"sink {names[c]} has no predecessor", (names[c],))
    if levels[0] and not relaxed:
        for b in levels[1]:
            if indeg[b] == 0:
                raise OrphanMiddle(f"middle vertex {names[b]} has no A-predecessor", (names[b],))
    return DepthTwoDag(names, levels, src, dst, relaxed=relaxed)


def build_depth_two(
    levels: Sequence[Sequence[str]], edges: Iterable[Sequence[str]]
) -> DepthTwoDag:
    """Validate declared levels ``(A, B, C)`` and named edges into a graph."""
    if len(levels) != 3:
        raise ValueError("expected exactly three levels")
    names: list[str] = [s for lv in levels for s in lv]
    index: dict[str, int] = {}
    for s in names:
        if not isinstance(s, str):
            raise TypeError(f"vertex names must be strings, got {s!r}")
        if s in index:
            raise DuplicateName(f"vertex name {s!r} declared twice", (s,))
        index[s] = len(index)
    sizes = [len(lv) for lv in levels]
    off = [0, sizes[0], sizes[0] + sizes[1]]
    level_ids = tuple(tuple(range(off[k], off[k] + sizes[k])) for k in range(3))
    src: list[int] = []
    dst: list[int] = []
    for i, e in enumerate(edges):
        u, v = e
        for end in (u, v):
            if end not in index:
                raise UnknownEndpoint(
                    f"edge {u}->{v} names undeclared vertex {end!r}", (u, v), edge_index=i
                )
        src.append(index[u])
        dst.append(index[v])
    return _validated(
        tuple(names),
        level_ids,  # type: ignore[arg-type]
        np.asarray(src, dtype=np.int64),
        np.asarray(dst, dtype=np.int64),
    )


def infer_levels(
    vertices: Sequence[str], edges: Iterable[Sequence[str]]
) -> tuple[list[str], list[str], list[str]]:
    """Assign A/B/C membership from edge structure alone (DOT input without levels).

    A collects sources (isolated vertices included), C collects vertices at
    the end of a three-vertex path, B the rest.  Output lists keep the order of
    ``vertices``.
    """
    pos = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    edge_list = []
    for i, (u, v) in enumerate(edges):
        for end in (u, v):
            if end not in pos:
                raise UnknownEndpoint(
                    f"edge {u}->{v} names undeclared vertex {end!r}", (u, v), edge_index=i
                )
        edge_list.append((pos[u], pos[v]))
        succ[pos[u]].append(pos[v])
        indeg[pos[v]] += 1
    # Kahn order; depth[v] = vertices on the longest path ending at v
    depth = [1] * n
    left = list(indeg)
    queue = deque(v for v in range(n) if left[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in succ[u]:
            depth[v] = max(depth[v], depth[u] + 1)
            left[v] -= 1
            if left[v] == 0:
                queue.append(v)
    if seen < n:
        stuck = [vertices[v] for v in range(n) if left[v] > 0]
        raise CycleDetected("graph contains a cycle", stuck[:3])
    for v in range(n):
        if depth[v] > 3:
            raise DepthExceeded(
                f"a path of {depth[v]} vertices ends at {vertices[v]}", (vertices[v],)
            )
    for i, (u, v) in enumerate(edge_list):
        if depth[u] == 1 and depth[v] == 3:
            a, c = vertices[u], vertices[v]
            raise SkipLevelEdge(f"edge {a}->{c} joins A and C directly", (a, c), edge_index=i)
    out: tuple[list[str], list[str], list[str]] = ([], [], [])
    for v in range(n):
        out[depth[v] - 1].append(vertices[v])
    return out


def reverse(g: DepthTwoDag) -> DepthTwoDag:
    """Reverse every edge and swap A with C.

    Isolated A-vertices stay in A (they would otherwise land in C with no
    predecessor).  Middle vertices without successors in ``g`` have no
    predecessor in the result; the returned graph is marked ``relaxed`` and
    skips that one check.
    """
    iso = g.isolated_mask()
    a_new = tuple(g.c_level) + tuple(v for v in g.a_level if iso[v])
    c_new = tuple(v for v in g.a_level if not iso[v])
    src, dst = g.edge_arrays()
    outdeg = g.out_degrees()
    # a B-vertex with no C-successor has no A-predecessor once reversed
    relaxed = any(outdeg[b] == 0 for b in g.b_level)
    return _validated(g.names, (a_new, g.b_level, c_new), dst.copy(), src.copy(), relaxed=relaxed)


# --------------------------------------------------------------------------
# bipartite views


class BipartiteView:
    """One layer of a graph seen as sources S → sinks W.

    Neighbour lists are kept as a local CSR over global vertex ids.  A view
    can be narrowed with :meth:`without`, which drops a few sources lazily
    (the CSR is shared and queries filter the removed ids).
    """

    __slots__ = (
        "sources",
        "sinks",
        "_sink_ptr",
        "_sink_nb",
        "_src_ptr",
        "_src_nb",
        "_sink_row",
        "_src_row",
        "_excluded",
        "_order",
    )

    def __init__(
        self,
        sources: tuple[int, ...],
        sinks: tuple[int, ...],
        sink_csr: tuple[np.ndarray, np.ndarray],
        src_csr: tuple[np.ndarray, np.ndarray],
        sink_row: np.ndarray,
        src_row: np.ndarray,
        excluded: frozenset[int] = frozenset(),
    ) -> None:
        self.sources = sources
        self.sinks = sinks
        self._sink_ptr, self._sink_nb = sink_csr
        self._src_ptr, self._src_nb = src_csr
        self._sink_row = sink_row
        self._src_row = src_row
        self._excluded = excluded
        self._order: tuple[int, ...] | None = None

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_global(
        cls,
        n: int,
        sources: Sequence[int],
        sinks: Sequence[int],
        sink_side: tuple[np.ndarray, np.ndarray],
        source_side: tuple[np.ndarray, np.ndarray],
        filter_columns: bool,
    ) -> BipartiteView:
        s_arr = np.asarray(sources, dtype=np.int64)
        w_arr = np.asarray(sinks, dtype=np.int64)
        keep_s = keep_w = None
        if filter_columns:
            keep_s = np.zeros(n, dtype=bool)
            keep_s[s_arr] = True
            keep_w = np.zeros(n, dtype=bool)
            keep_w[w_arr] = True
        sink_csr = _gather(sink_side[0], sink_side[1], w_arr, keep_s)
        src_csr = _gather(source_side[0], source_side[1], s_arr, keep_w)
        sink_row = np.full(n, -1, dtype=np.int64)
        sink_row[w_arr] = np.arange(len(w_arr))
        src_row = np.full(n, -1, dtype=np.int64)
        src_row[s_arr] = np.arange(len(s_arr))
        return cls(tuple(sources), tuple(sinks), sink_csr, src_csr, sink_row, src_row)

    @classmethod
    def from_edges(
        cls,
        sources: Sequence[int],
        sinks: Sequence[int],
        edges: Iterable[tuple[int, int]],
    ) -> BipartiteView:
        """Free-standing view over arbitrary non-negative ids (``edges`` run source→sink)."""
        s_set, w_set = set(sources), set(sinks)
        if len(s_set) != len(sources) or len(w_set) != len(sinks) or s_set & w_set:
            raise ValueError("sources and sinks must be distinct ids")
        pairs = sorted(set((int(u), int(v)) for u, v in edges))
        for u, v in pairs:
            if u not in s_set or v not in w_set:
                raise ValueError(f"edge ({u}, {v}) does not run from a source to a sink")
        n = max([*sources, *sinks], default=-1) + 1
        src = np.asarray([u for u, _ in pairs], dtype=np.int64)
        dst = np.asarray([v for _, v in pairs], dtype=np.int64)
        return cls._from_global(
            n, sources, sinks, _csr(dst, src, n), _csr(src, dst, n), filter_columns=False
        )

    def without(self, removed: Iterable[int]) -> BipartiteView:
        """Same view with the given sources dropped."""
        removed = frozenset(removed) - self._excluded
        if not removed:
            return self
        excl = self._excluded | removed
        return BipartiteView(
            tuple(b for b in self.sources if b not in excl),
            self.sinks,
            (self._sink_ptr, self._sink_nb),
            (self._src_ptr, self._src_nb),
            self._sink_row,
            self._src_row,
            excl,
        )

    def transpose(self) -> BipartiteView:
        """Swap the roles of sources and sinks (edges read backwards)."""
        if self._excluded:
            raise ValueError("cannot transpose a view with dropped sources")
        return BipartiteView(
            self.sinks,
            self.sources,
            (self._src_ptr, self._src_nb),
            (self._sink_ptr, self._sink_nb),
            self._src_row,
            self._sink_row,
        )

    # -- queries -------------------------------------------------------------

    @property
    def n_sources(self) -> int:
        return len(self.sources)

    @property
    def n_sinks(self) -> int:
        return len(self.sinks)

    @property
    def excluded(self) -> frozenset[int]:
        return self._excluded

    def _raw_preds(self, w: int) -> np.ndarray:
        r = self._sink_row[w]
        if r < 0:
            raise KeyError(w)
        return self._sink_nb[self._sink_ptr[r] : self._sink_ptr[r + 1]]

    def _raw_succs(self, b: int) -> np.ndarray:
        r = self._src_row[b]
        if r < 0:
            raise KeyError(b)
        return self._src_nb[self._src_ptr[r] : self._src_ptr[r + 1]]

    def predecessors(self, w: int) -> frozenset[int]:
        """N−(w) restricted to the view's sources."""
        return frozenset(self._raw_preds(w).tolist()) - self._excluded

    def successors(self, b: int) -> frozenset[int]:
        if b in self._excluded:
            raise KeyError(b)
        return frozenset(self._raw_succs(b).tolist())

    def in_degree(self, w: int) -> int:
        return len(self.predecessors(w))

    def out_degree(self, b: int) -> int:
        return len(self.successors(b))

    def in_degrees(self) -> np.ndarray:
        """d−(w) for every sink, aligned with ``sinks``."""
        deg = np.diff(self._sink_ptr)
        if self._excluded:
            deg = deg.copy()
            for f in self._excluded:
                rows = self._sink_row[self._raw_succs(f)]
                np.subtract.at(deg, rows, 1)
        return deg

    def out_degrees(self) -> np.ndarray:
        """d+(b) for every source, aligned with ``sources``."""
        if not self._excluded:
            return np.diff(self._src_ptr)
        rows = self._src_row[np.asarray(self.sources, dtype=np.int64)]
        return self._src_ptr[rows + 1] - self._src_ptr[rows]

    @property
    def m(self) -> int:
        return int(self.in_degrees().sum())

    def is_complete(self) -> bool:
        return bool((self.in_degrees() == self.n_sources).all())

    def scan_order(self) -> tuple[int, ...]:
        """Sources with no successors first, then the rest; insertion order within each."""
        if self._order is None:
            deg = self.out_degrees()
            idle = [b for b, d in zip(self.sources, deg.tolist()) if d == 0]
            busy = [b for b, d in zip(self.sources, deg.tolist()) if d != 0]
            self._order = tuple(idle + busy)
        return self._order

    def non_neighbors(self, w: int) -> tuple[int, ...]:
        """N̄_B(w) in source insertion order."""
        adj = self.predecessors(w)
        return tuple(b for b in self.sources if b not in adj)

    def first_non_neighbors(self, w: int, k: int, skip: Sequence[int] = ()) -> list[int]:
        """Up to ``k`` non-neighbours of ``w`` in scan order, ignoring ``skip``."""
        return kernels.first_non_neighbors(self.scan_order(), self.predecessors(w), k, tuple(skip))

    @property
    def sink_non_neighbors(self) -> dict[int, frozenset[int]]:
        """N̄_B(w) for every sink (quadratic; meant for small views)."""
        return {w: frozenset(self.non_neighbors(w)) for w in self.sinks}

    def single_missing(self) -> dict[int, int]:
        """For sinks missing exactly one source, that source (linear time)."""
        deg = self.in_degrees()
        rows = np.flatnonzero(deg == self.n_sources - 1)
        if not len(rows):
            return {}
        # the missing id is the source-id total minus the neighbour-id sum
        counts = np.diff(self._sink_ptr)
        owner = np.repeat(np.arange(len(self.sinks), dtype=np.int64), counts)
        sums = np.bincount(owner, weights=self._sink_nb, minlength=len(self.sinks))
        sums = sums.astype(np.int64)
        for f in self._excluded:
            np.subtract.at(sums, self._sink_row[self._raw_succs(f)], f)
        total = sum(self.sources)
        return {self.sinks[r]: total - int(sums[r]) for r in rows.tolist()}

    def sink_masks(self, bits: dict[int, int]) -> np.ndarray:
        """OR of ``bits[b]`` over each sink's neighbours (sources absent from ``bits`` add 0)."""
        counts = np.diff(self._sink_ptr)
        owner = np.repeat(np.arange(len(self.sinks), dtype=np.int64), counts)
        out = np.zeros(len(self.sinks), dtype=np.int64)
        for b, bit in bits.items():
            if b in self._excluded:
                continue
            hit = owner[self._sink_nb == b]
            out[hit] |= bit
        return out

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """``(source, sink)`` id arrays of the view's edges."""
        counts = np.diff(self._sink_ptr)
        dst = np.repeat(np.asarray(self.sinks, dtype=np.int64), counts)
        src = self._sink_nb
        if self._excluded:
            keep = ~np.isin(src, list(self._excluded))
            src, dst = src[keep], dst[keep]
        return src, dst

    def __repr__(self) -> str:
        return f"BipartiteView(|S|={self.n_sources}, |W|={self.n_sinks}, m={self.m})"


def bipartite_view(g: DepthTwoDag, layer: Layer | str) -> BipartiteView:
    """Sources → sinks view of the AB or BC layer of ``g``."""
    layer = Layer(layer)
    if layer is Layer.AB:
        sources, sinks = g.a_level, g.b_level
    else:
        sources, sinks = g.b_level, g.c_level
    return core_view(g, sources, sinks)


def core_view(g: DepthTwoDag, sources: Sequence[int], sinks: Sequence[int]) -> BipartiteView:
    """View over explicit vertex subsets; edges may run either way between them."""
    if not sinks or not sources:
        n = g.n
        empty = (np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))
        sink_row = np.full(n, -1, dtype=np.int64)
        sink_row[list(sinks)] = np.arange(len(sinks))
        src_row = np.full(n, -1, dtype=np.int64)
        src_row[list(sources)] = np.arange(len(sources))
        zs = (np.zeros(len(sinks) + 1, dtype=np.int64), empty[1])
        zb = (np.zeros(len(sources) + 1, dtype=np.int64), empty[1])
        return BipartiteView(tuple(sources), tuple(sinks), zs, zb, sink_row, src_row)
    lv_s = int(g.level_array[sources[0]])
    lv_w = int(g.level_array[sinks[0]])
    if lv_w > lv_s:
        sink_side, source_side = g.pred_csr(), g.succ_csr()
    else:
        sink_side, source_side = g.succ_csr(), g.pred_csr()
    full = len(sources) == len(g.levels[lv_s]) and len(sinks) == len(g.levels[lv_w])
    return BipartiteView._from_global(
        g.n, sources, sinks, sink_side, source_side, filter_columns=not full
    )
