"""Two-processor scheduling of depth-two DAGs with unit execution and communication times."""

from .formats import ParseError, parse_instance, render_gantt
from .graph import (
    BipartiteView,
    DepthTwoDag,
    GraphError,
    Layer,
    Level,
    bipartite_view,
    build_depth_two,
    infer_levels,
    reverse,
)
from .hinge import (
    Case,
    HingeKind,
    HingeResult,
    Parity,
    Side,
    classify_left_hinge,
    horizontal_hinge,
    vertical_hinge,
)
from .kernels import BACKEND
from .oracle import InstanceFamily, enumerate_instances, optimal_makespan, random_instance
from .schedule import Direction, Processor, Schedule, Slot, TraceEntry
from .scheduler import reverse_schedule, schedule_bipartite, schedule_depth_two
from .verify import (
    Violation,
    ViolationKind,
    check_bounds,
    check_feasible,
    compare,
    fallback_schedule,
    idle_slots,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BipartiteView",
    "Case",
    "DepthTwoDag",
    "Direction",
    "GraphError",
    "HingeKind",
    "HingeResult",
    "InstanceFamily",
    "Layer",
    "Level",
    "Parity",
    "ParseError",
    "Processor",
    "Schedule",
    "Side",
    "Slot",
    "TraceEntry",
    "Violation",
    "ViolationKind",
    "bipartite_view",
    "build_depth_two",
    "check_bounds",
    "check_feasible",
    "classify_left_hinge",
    "compare",
    "enumerate_instances",
    "fallback_schedule",
    "horizontal_hinge",
    "idle_slots",
    "infer_levels",
    "optimal_makespan",
    "parse_instance",
    "random_instance",
    "render_gantt",
    "reverse",
    "reverse_schedule",
    "schedule_bipartite",
    "schedule_depth_two",
    "vertical_hinge",
]
