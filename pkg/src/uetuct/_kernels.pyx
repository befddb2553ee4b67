# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector


cdef struct ParentRec:
    uint64_t parent
    int x
    int y
    bint swapped


cdef inline uint64_t _key(uint64_t done, int l1, int l2) nogil:
    return (done << 12) | (<uint64_t>(l1 + 1) << 6) | <uint64_t>(l2 + 1)


def oracle_search(pred_masks, not_later=None):
    """Breadth-first minimum-makespan search; same contract as the Python twin."""
    cdef int n = len(pred_masks)
    if n == 0:
        return 0, []
    if n > 40:
        raise ValueError("oracle kernel supports at most 40 vertices")
    cdef vector[uint64_t] preds
    cdef vector[uint64_t] before
    cdef int v
    for v in range(n):
        preds.push_back(<uint64_t>pred_masks[v])
        before.push_back(0 if not_later is None else <uint64_t>not_later[v])
    cdef uint64_t full = (<uint64_t>1 << n) - 1
    cdef unordered_map[uint64_t, ParentRec] parent
    cdef vector[uint64_t] frontier, nxt
    cdef vector[int] on1, on2
    cdef ParentRec rec
    cdef uint64_t start = _key(0, -1, -1)
    rec.parent = start
    rec.x = -2
    rec.y = -2
    rec.swapped = False
    parent[start] = rec
    frontier.push_back(start)

    cdef int t = 0
    cdef bint found = False
    cdef uint64_t goal = 0
    cdef uint64_t state, done, nd, last1, last2, child
    cdef int l1, l2, x, y, c1, c2, i, j, k
    cdef bint swapped

    with nogil:
        while not found:
            t += 1
            nxt.clear()
            for i in range(<int>frontier.size()):
                state = frontier[i]
                done = state >> 12
                l1 = <int>((state >> 6) & 63) - 1
                l2 = <int>(state & 63) - 1
                last1 = 0 if l1 < 0 else (<uint64_t>1 << l1)
                last2 = 0 if l2 < 0 else (<uint64_t>1 << l2)
                on1.clear()
                on2.clear()
                on1.push_back(-1)
                on2.push_back(-1)
                for v in range(n):
                    if (done >> v) & 1:
                        continue
                    if preds[v] & ~done:
                        continue
                    if not (preds[v] & last2):
                        on1.push_back(v)
                    if not (preds[v] & last1):
                        on2.push_back(v)
                for j in range(<int>on1.size()):
                    x = on1[j]
                    for k in range(<int>on2.size()):
                        y = on2[k]
                        if x == y and x >= 0:
                            continue
                        nd = done
                        if x >= 0:
                            nd |= <uint64_t>1 << x
                        if y >= 0:
                            nd |= <uint64_t>1 << y
                        if x >= 0 and before[x] & ~nd:
                            continue
                        if y >= 0 and before[y] & ~nd:
                            continue
                        if y < x:
                            c1 = y
                            c2 = x
                            swapped = True
                        else:
                            c1 = x
                            c2 = y
                            swapped = False
                        child = _key(nd, c1, c2)
                        if parent.count(child):
                            continue
                        rec.parent = state
                        rec.x = x
                        rec.y = y
                        rec.swapped = swapped
                        parent[child] = rec
                        if nd == full:
                            goal = child
                            found = True
                            break
                        nxt.push_back(child)
                    if found:
                        break
                if found:
                    break
            frontier.swap(nxt)

    steps = []
    cdef uint64_t node = goal
    while node != start:
        rec = parent[node]
        steps.append((rec.x, rec.y, rec.swapped))
        node = rec.parent
    steps.reverse()
    witness = []
    cdef int flipped = 0
    cdef int time = 0
    for x, y, swapped in steps:
        time += 1
        if x >= 0:
            witness.append((x, time, flipped))
        if y >= 0:
            witness.append((y, time, 1 ^ flipped))
        flipped ^= swapped
    return t, witness


def first_non_neighbors(order, adjacent, int k, skip=()):
    """First ``k`` members of ``order`` outside ``adjacent`` and ``skip``."""
    out = []
    if k <= 0:
        return out
    for v in order:
        if v in adjacent or v in skip:
            continue
        out.append(v)
        if len(out) == k:
            break
    return out


def scan_shared_non_neighbor(order, single, multi):
    """Marking pass of the horizontal hinge search (see the Python twin)."""
    cdef dict mark = {}
    for w, b in single:
        if b not in mark:
            mark[b] = w
    for w, preds in multi:
        for b in order:
            if b in preds:
                continue
            owner = mark.get(b)
            if owner is not None:
                return owner, w, b
            mark[b] = w
    return None
