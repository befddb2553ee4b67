"""Two-processor schedules: a time slot and processor for every vertex."""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from .graph import BipartiteView
from .hinge import Case, HingeKind, Side

__all__ = ["Direction", "Processor", "Schedule", "Slot", "TraceEntry"]


class Direction(enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"

    def flipped(self) -> Direction:
        return Direction.REVERSE if self is Direction.FORWARD else Direction.FORWARD


class Processor(enum.IntEnum):
    P1 = 1
    P2 = 2

    def __str__(self) -> str:
        return self.name


class Slot(NamedTuple):
    time: int
    processor: Processor


@dataclass(frozen=True)
class TraceEntry:
    """One hinge the scheduler computed.

    ``stage`` 1 is the B/C boundary (view: B sources, C sinks); stage 2 is the
    A/B boundary, computed on the transposed view (B sources, A sinks).
    ``side`` is relative to that view: ``right`` is the sink pair.
    ``applied`` is false for hinges recorded for reference only (the compact
    path places small middle levels by exhaustive search).  ``refined`` marks
    a single-sink horizontal hinge whose left slot pair was filled with two
    real sources instead of ``(b0, i)``.
    """

    stage: int
    kind: HingeKind
    side: Side
    first: int | None
    second: int | None
    case: Case | None
    applied: bool = True
    refined: bool = False
    view: BipartiteView | None = field(default=None, compare=False, repr=False)


class Schedule:
    """Time slot (1-based, 0 = unassigned) and processor (1 or 2) per vertex id.

    The arrays are read-only.  ``makespan`` defaults to the largest time used.
    """

    __slots__ = (
        "times",
        "processors",
        "makespan",
        "direction",
        "trace",
        "optimal_claimed",
        "fallback",
        "notes",
    )

    def __init__(
        self,
        times: np.ndarray,
        processors: np.ndarray,
        makespan: int | None = None,
        direction: Direction = Direction.FORWARD,
        trace: tuple[TraceEntry, ...] = (),
        *,
        optimal_claimed: bool = False,
        fallback: bool = False,
        notes: Mapping[str, Any] | None = None,
    ) -> None:
        t = np.array(times, dtype=np.int64)
        p = np.array(processors, dtype=np.int8)
        if t.shape != p.shape or t.ndim != 1:
            raise ValueError("times and processors must be equal-length vectors")
        t.flags.writeable = False
        p.flags.writeable = False
        self.times = t
        self.processors = p
        self.makespan = int(t.max(initial=0)) if makespan is None else int(makespan)
        self.direction = direction
        self.trace = tuple(trace)
        self.optimal_claimed = optimal_claimed
        self.fallback = fallback
        self.notes = dict(notes or {})

    @classmethod
    def from_slots(
        cls, n: int, slots: Mapping[int, tuple[int, int]], **kwargs: Any
    ) -> Schedule:
        """Build from ``{vertex: (time, processor)}``; missing vertices stay unassigned."""
        times = np.zeros(n, dtype=np.int64)
        procs = np.zeros(n, dtype=np.int8)
        for v, (t, p) in slots.items():
            times[v] = t
            procs[v] = int(p)
        return cls(times, procs, **kwargs)

    @property
    def n(self) -> int:
        return len(self.times)

    def slot(self, v: int) -> Slot | None:
        t = int(self.times[v])
        return None if t == 0 else Slot(t, Processor(int(self.processors[v])))

    @property
    def slots(self) -> dict[int, Slot]:
        """Assigned vertices only, in id order."""
        ids = np.flatnonzero(self.times)
        return {
            int(v): Slot(int(self.times[v]), Processor(int(self.processors[v]))) for v in ids
        }

    def with_trace(self, trace: tuple[TraceEntry, ...]) -> Schedule:
        return Schedule(
            self.times,
            self.processors,
            self.makespan,
            self.direction,
            trace,
            optimal_claimed=self.optimal_claimed,
            fallback=self.fallback,
            notes=self.notes,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return (
            np.array_equal(self.times, other.times)
            and np.array_equal(self.processors, other.processors)
            and self.makespan == other.makespan
            and self.direction == other.direction
        )

    def __hash__(self) -> int:
        return hash((self.times.tobytes(), self.processors.tobytes(), self.makespan))

    def __repr__(self) -> str:
        return (
            f"Schedule(n={self.n}, makespan={self.makespan}, "
            f"direction={self.direction.value})"
        )
