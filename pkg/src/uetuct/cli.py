"""Command-line entry point.

Exit codes: 0 success, 1 violations or mismatches, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections.abc import Sequence
from typing import TextIO

from . import formats
from .bench import CSV_HEADER, run_bench
from .graph import DepthTwoDag, GraphError, Layer, bipartite_view
from .oracle import (
    Exhaustive,
    FamilyTooLarge,
    InstanceFamily,
    InstanceTooLarge,
    Random,
    enumerate_instances,
    optimal_makespan,
)
from .schedule import Schedule
from .scheduler import InfeasibleAssembly, reverse_schedule, schedule_bipartite, schedule_depth_two
from .verify import check_bounds, check_feasible, compare

__all__ = ["main"]

OK, FAILED, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _Usage(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got {text!r}")
    return out


def _sizes3(text: str) -> tuple[int, int, int]:
    out = _ints(text)
    if len(out) != 3:
        raise argparse.ArgumentTypeError("expected three level sizes NA,NB,NC")
    return out[0], out[1], out[2]


def _probability(text: str) -> float:
    p = float(text)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError("probability must lie in [0, 1]")
    return p


def _build_parser() -> _Parser:
    ap = _Parser(prog="uetuct", description="Two-processor UET-UCT scheduling of depth-two DAGs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="schedule an instance")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "gantt"), default="json")
    p.add_argument("--input-format", choices=("json", "dot"))
    p.add_argument("--reverse-view", action="store_true", help="print the schedule read backwards in time")

    p = sub.add_parser("oracle", help="exact minimum makespan by exhaustive search")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=16)
    p.add_argument("--natural", action="store_true", help="restrict to level-by-level schedules")
    p.add_argument("--format", choices=("json", "gantt"), default="json")
    p.add_argument("--input-format", choices=("json", "dot"))

    p = sub.add_parser("verify", help="check a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--input-format", choices=("json", "dot"))
    p.add_argument(
        "--strict-bounds",
        action="store_true",
        help="also fail when the makespan exceeds floor(n/2)+2",
    )

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--nb", type=int, required=True)
    p.add_argument("--nc", type=int, required=True)
    p.add_argument("--p", type=_probability, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("compare", help="scheduler against the oracle on a batch")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", type=int, metavar="N")
    p.add_argument("--max-per-level", type=int, default=2, metavar="K")
    p.add_argument("--sizes", type=_sizes3, metavar="NA,NB,NC")
    p.add_argument("--p", type=_probability, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=16)
    p.add_argument("--report", metavar="FILE")

    p = sub.add_parser("bench", help="wall-clock scaling as CSV")
    p.add_argument("--sizes", type=_ints, required=True, metavar="N1,N2,...")
    p.add_argument("--p", type=_probability, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=1)
    return ap


def _load(path: str, fmt: str | None) -> DepthTwoDag:
    try:
        return formats.load_instance(path, fmt)
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    except formats.ParseError as exc:
        raise _Usage(f"{path}: {exc}") from None


def solve(g: DepthTwoDag) -> Schedule:
    """Full scheduler, or the single-layer one when a whole level is empty."""
    if g.degenerate and g.b_level:
        layer = Layer.BC if not g.a_level else Layer.AB if not g.c_level else None
        if layer is not None:
            v = bipartite_view(g, layer)
            if v.sources and v.sinks:
                return schedule_bipartite(v)
    return schedule_depth_two(g)


def _emit(s: Schedule, g: DepthTwoDag, fmt: str, out: TextIO) -> None:
    if fmt == "gantt":
        out.write(formats.render_gantt(s, g.names))
    else:
        out.write(formats.schedule_to_json(s, g))


def _cmd_solve(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = _load(a.file, a.input_format)
    try:
        s = solve(g)
    except InfeasibleAssembly as exc:
        err.write(f"error: {exc}\n")
        return FAILED
    if a.reverse_view:
        s = reverse_schedule(s, g)
    _emit(s, g, a.format, out)
    return OK


def _cmd_oracle(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = _load(a.file, a.input_format)
    try:
        _, s = optimal_makespan(g, a.limit, natural=a.natural)
    except InstanceTooLarge as exc:
        raise _Usage(str(exc)) from None
    _emit(s, g, a.format, out)
    return OK


def _cmd_verify(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = _load(a.instance, a.input_format)
    try:
        s = formats.load_schedule(a.schedule, g)
    except OSError as exc:
        raise _Usage(f"cannot read {a.schedule}: {exc.strerror}") from None
    except formats.ParseError as exc:
        raise _Usage(f"{a.schedule}: {exc}") from None
    bad = check_feasible(g, s)
    for v in bad:
        out.write(v.describe(g.names) + "\n")
    b = check_bounds(g, s)
    status = OK if not bad else FAILED
    if b.violated == "lower":
        out.write(f"BoundViolated(lower): makespan {b.makespan} < {b.lower}\n")
        status = FAILED
    elif b.violated == "upper":
        out.write(f"BoundExceeded(upper): makespan {b.makespan} > {b.upper}\n")
        if a.strict_bounds:
            status = FAILED
    if status == OK:
        out.write(f"feasible: n={b.n} makespan={b.makespan} bounds=[{b.lower},{b.upper}]\n")
    return status


def _cmd_gen(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    sizes = (a.na, a.nb, a.nc)
    mode = Exhaustive() if a.exhaustive else Random(a.p, a.seed, a.count)
    try:
        batch = enumerate_instances(InstanceFamily(sizes, mode))
        if not a.exhaustive and a.count == 1:
            out.write(formats.instance_to_json(next(iter(batch))))
            return OK
        for g in batch:
            out.write(json.dumps(formats.instance_to_document(g), ensure_ascii=False) + "\n")
    except (FamilyTooLarge, ValueError) as exc:
        raise _Usage(str(exc)) from None
    return OK


def _exhaustive_batch(k: int):
    for sizes in itertools.product(range(1, k + 1), repeat=3):
        yield from enumerate_instances(InstanceFamily(sizes, Exhaustive()))


def _cmd_compare(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    if a.exhaustive:
        if a.max_per_level < 1:
            raise _Usage("--max-per-level must be at least 1")
        k = a.max_per_level
        if 2 * k * k > 20:
            raise _Usage(f"--max-per-level {k} gives families too large to enumerate")
        batch = _exhaustive_batch(k)
    else:
        if a.sizes is None:
            raise _Usage("--random needs --sizes NA,NB,NC")
        batch = enumerate_instances(InstanceFamily(a.sizes, Random(a.p, a.seed, a.random)))
    try:
        rep = compare(batch, a.limit, keep_matches=False)
    except (FamilyTooLarge, GraphError) as exc:
        raise _Usage(str(exc)) from None
    summary = rep.summary()
    if a.report:
        with open(a.report, "w", encoding="utf-8") as fh:
            formats.write_report((r.to_dict() for r in rep.records), summary, fh)
    out.write(json.dumps(summary) + "\n")
    for r in rep.deviations[:5]:
        err.write(
            f"mismatch #{r.index} ({r.digest[:12]}): algorithm {r.algorithm}, "
            f"oracle {r.oracle}, level-by-level optimum {r.natural_oracle}\n"
        )
    if len(rep.deviations) > 5:
        err.write(f"... {len(rep.deviations) - 5} more mismatches\n")
    return OK if rep.mismatches == 0 and rep.errors == 0 else FAILED


def _cmd_bench(a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    if a.instances < 1:
        raise _Usage("--instances must be at least 1")
    out.write(CSV_HEADER + "\n")
    for row in run_bench(a.sizes, a.p, a.seed, a.instances):
        out.write(row.csv() + "\n")
        out.flush()
    return OK


_COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "compare": _cmd_compare,
    "bench": _cmd_bench,
}


def cli_main(
    argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None
) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        a = _build_parser().parse_args(argv)
        return _COMMANDS[a.command](a, out, err)
    except _Usage as exc:
        err.write(f"error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(cli_main())
