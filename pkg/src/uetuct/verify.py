"""Feasibility and bound checks, the level-by-level fallback, and oracle comparison."""

from __future__ import annotations

import enum
import hashlib
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph import DepthTwoDag
from .schedule import Processor, Schedule, Slot

__all__ = [
    "BoundsReport",
    "ComparisonRecord",
    "ComparisonReport",
    "Violation",
    "ViolationKind",
    "check_bounds",
    "check_feasible",
    "compare",
    "fallback_schedule",
    "find_violations",
    "idle_slots",
    "instance_digest",
]


class ViolationKind(enum.Enum):
    SLOT_COLLISION = "SlotCollision"
    MISSING_VERTEX = "MissingVertex"
    SAME_PROC_GAP = "SameProcGap"
    CROSS_PROC_GAP = "CrossProcGap"
    TIME_OUT_OF_RANGE = "TimeOutOfRange"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    vertices: tuple[int, ...]
    slots: tuple[Slot, ...] = ()

    @property
    def subjects(self) -> tuple[Any, ...]:
        return self.vertices + self.slots

    def describe(self, names: tuple[str, ...] | None = None) -> str:
        label = (lambda v: names[v]) if names else str
        who = ", ".join(label(v) for v in self.vertices)
        where = " ".join(f"({s.time},{s.processor})" for s in self.slots)
        return f"{self.kind.value}({who}){' at ' + where if where else ''}"


def find_violations(
    times: np.ndarray,
    procs: np.ndarray,
    makespan: int,
    src: np.ndarray,
    dst: np.ndarray,
    required: np.ndarray | None = None,
) -> list[Violation]:
    """Every violated constraint, in a fixed order.

    ``required`` lists the vertex ids that must be scheduled (default: all).
    Order: missing vertices, out-of-range times, collisions, then edges in
    stored order.
    """
    out: list[Violation] = []
    n = len(times)
    req = np.arange(n) if required is None else np.asarray(required, dtype=np.int64)
    for v in req[times[req] == 0].tolist():
        out.append(Violation(ViolationKind.MISSING_VERTEX, (v,)))
    assigned = times != 0
    bad = assigned & ((times < 1) | (times > makespan) | ((procs != 1) & (procs != 2)))
    for v in np.flatnonzero(bad).tolist():
        out.append(
            Violation(
                ViolationKind.TIME_OUT_OF_RANGE,
                (v,),
                (Slot(int(times[v]), _proc(procs[v])),),
            )
        )
    ids = np.flatnonzero(assigned)
    if len(ids):
        cell = times[ids] * 4 + procs[ids]
        order = np.argsort(cell, kind="stable")
        cs = cell[order]
        dup = np.flatnonzero(cs[1:] == cs[:-1])
        if len(dup):
            for c in np.unique(cs[dup]).tolist():
                members = ids[order][cs == c].tolist()
                out.append(
                    Violation(
                        ViolationKind.SLOT_COLLISION,
                        tuple(members),
                        (Slot(c // 4, _proc(c % 4)),),
                    )
                )
    if len(src):
        tu, tv = times[src], times[dst]
        live = (tu != 0) & (tv != 0)
        same = procs[src] == procs[dst]
        need = np.where(same, 1, 2)
        broken = np.flatnonzero(live & (tv - tu < need))
        for i in broken.tolist():
            u, v = int(src[i]), int(dst[i])
            kind = ViolationKind.SAME_PROC_GAP if same[i] else ViolationKind.CROSS_PROC_GAP
            out.append(
                Violation(
                    kind,
                    (u, v),
                    (Slot(int(times[u]), _proc(procs[u])), Slot(int(times[v]), _proc(procs[v]))),
                )
            )
    return out


def _proc(p: Any) -> Processor | int:
    p = int(p)
    return Processor(p) if p in (1, 2) else p


def check_feasible(g: DepthTwoDag, s: Schedule) -> list[Violation]:
    """Empty iff ``s`` is a feasible UET-UCT schedule of ``g``."""
    if s.n != g.n:
        raise ValueError(f"schedule covers {s.n} vertex ids, graph has {g.n}")
    src, dst = g.edge_arrays()
    return find_violations(s.times, s.processors, s.makespan, src, dst)


@dataclass(frozen=True)
class BoundsReport:
    ok: bool
    n: int
    makespan: int
    lower: int
    upper: int
    violated: str | None


def check_bounds(g: DepthTwoDag | int, s: Schedule) -> BoundsReport:
    """``ceil(n/2) <= makespan <= floor(n/2) + 2``."""
    n = g if isinstance(g, int) else g.n
    lower, upper = (n + 1) // 2, n // 2 + 2
    violated = "lower" if s.makespan < lower else "upper" if s.makespan > upper else None
    return BoundsReport(violated is None, n, s.makespan, lower, upper, violated)


def idle_slots(s: Schedule) -> list[Slot]:
    busy = np.zeros((s.makespan + 1, 3), dtype=bool)
    ok = (s.times >= 1) & (s.times <= s.makespan) & ((s.processors == 1) | (s.processors == 2))
    busy[s.times[ok], s.processors[ok]] = True
    t, p = np.nonzero(~busy[1:, 1:])
    return [Slot(int(a) + 1, Processor(int(b) + 1)) for a, b in zip(t, p)]


def fallback_schedule(g: DepthTwoDag) -> Schedule:
    """Level blocks A, B, C, each packed two per slot, with one idle slot between blocks.

    Always feasible; not optimal in general.
    """
    times = np.zeros(g.n, dtype=np.int64)
    procs = np.zeros(g.n, dtype=np.int8)
    t0 = 1
    for level in g.levels:
        if not level:
            continue
        ids = np.asarray(level, dtype=np.int64)
        k = np.arange(len(ids))
        times[ids] = t0 + k // 2
        procs[ids] = 1 + k % 2
        t0 += (len(ids) + 1) // 2 + 1
    return Schedule(
        times, procs, optimal_claimed=False, fallback=True, notes={"method": "fallback"}
    )


# --------------------------------------------------------------------------
# comparison against the oracle


def instance_digest(g: DepthTwoDag) -> str:
    """Stable hash of the canonical instance serialization."""
    from .formats import instance_to_json

    return hashlib.sha256(instance_to_json(g).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ComparisonRecord:
    index: int
    digest: str
    n: int
    algorithm: int | None
    oracle: int | None
    match: bool
    natural_oracle: int | None = None
    trace: tuple[dict[str, Any], ...] = ()
    instance: dict[str, Any] | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "digest": self.digest,
            "n": self.n,
            "algorithm": self.algorithm,
            "oracle": self.oracle,
            "match": self.match,
            "natural_oracle": self.natural_oracle,
            "hinge_trace": list(self.trace),
            "instance": self.instance,
            "error": self.error,
        }


@dataclass(frozen=True)
class ComparisonReport:
    records: tuple[ComparisonRecord, ...] = ()
    total: int = 0
    matches: int = 0
    mismatches: int = 0
    errors: int = 0
    deviations: tuple[ComparisonRecord, ...] = field(default=())

    def summary(self) -> dict[str, int]:
        return {
            "total": self.total,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "errors": self.errors,
        }


def compare(
    batch: Iterable[DepthTwoDag], limit: int = 16, *, keep_matches: bool = True
) -> ComparisonReport:
    """Run the scheduler and the oracle on every instance and tally agreement.

    A mismatch record carries the hinge trace, the serialized instance and the
    best makespan among level-by-level schedules (which tells a non-natural
    optimum apart from an algorithm defect).  Oversized instances become
    error records; the batch continues.
    """
    from .formats import instance_to_document, trace_to_document
    from .oracle import InstanceTooLarge, optimal_makespan
    from .scheduler import schedule_depth_two

    records = []
    matches = mismatches = errors = 0
    for i, g in enumerate(batch):
        digest = instance_digest(g)
        try:
            opt, _ = optimal_makespan(g, limit)
        except InstanceTooLarge as exc:
            errors += 1
            records.append(ComparisonRecord(i, digest, g.n, None, None, False, error=str(exc)))
            continue
        s = schedule_depth_two(g)
        if s.makespan == opt:
            matches += 1
            if keep_matches:
                records.append(ComparisonRecord(i, digest, g.n, s.makespan, opt, True))
            continue
        mismatches += 1
        natural, _ = optimal_makespan(g, limit, natural=True)
        records.append(
            ComparisonRecord(
                i,
                digest,
                g.n,
                s.makespan,
                opt,
                False,
                natural_oracle=natural,
                trace=tuple(trace_to_document(s.trace, g)),
                instance=instance_to_document(g),
            )
        )
    return ComparisonReport(
        tuple(records),
        matches + mismatches + errors,
        matches,
        mismatches,
        errors,
        tuple(r for r in records if not r.match and r.error is None),
    )

