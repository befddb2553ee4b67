"""Instance and schedule documents (JSON), the DOT input subset, and the ASCII Gantt table.

JSON is canonical: :func:`instance_to_json` and :func:`schedule_to_json`
produce one fixed layout, so serialize/parse/serialize is byte-stable.  DOT
is read-only; it has no level declarations, so levels are inferred from the
longest path ending at each vertex.
"""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from .graph import DepthTwoDag, GraphError, UnknownEndpoint, build_depth_two, infer_levels
from .hinge import Case, HingeKind, Side
from .schedule import Direction, Processor, Schedule, TraceEntry

__all__ = [
    "ParseError",
    "detect_format",
    "instance_from_document",
    "instance_to_document",
    "instance_to_json",
    "load_instance",
    "load_schedule",
    "parse_instance",
    "parse_schedule",
    "render_gantt",
    "schedule_from_document",
    "schedule_to_document",
    "schedule_to_json",
    "trace_to_document",
    "write_report",
]


class ParseError(ValueError):
    """Malformed input.  ``line`` and ``column`` are 1-based when known."""

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: int | None = None,
        *,
        cause: GraphError | None = None,
    ) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.cause = cause
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


# --------------------------------------------------------------------------
# instances


def instance_to_document(g: DepthTwoDag, metadata: dict[str, Any] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "a": [g.name(v) for v in g.a_level],
        "b": [g.name(v) for v in g.b_level],
        "c": [g.name(v) for v in g.c_level],
        "edges": [[g.name(u), g.name(v)] for u, v in g.edges],
    }
    meta = dict(metadata or {})
    if g.degenerate:
        meta["degenerate"] = True
    if meta:
        doc["metadata"] = meta
    return doc


def _dump(x: Any) -> str:
    return json.dumps(x, ensure_ascii=False)


def _rows(key: str, items: Sequence[Any], last: bool) -> list[str]:
    tail = "" if last else ","
    if not items:
        return [f'  "{key}": []{tail}']
    body = [f"    {_dump(x)}," for x in items]
    body[-1] = body[-1][:-1]
    return [f'  "{key}": [', *body, f"  ]{tail}"]


def instance_to_json(g: DepthTwoDag, metadata: dict[str, Any] | None = None) -> str:
    """Canonical text: level lists on one line each, one edge per line."""
    doc = instance_to_document(g, metadata)
    lines = ["{"]
    for key in ("a", "b", "c"):
        lines.append(f'  "{key}": {_dump(doc[key])},')
    has_meta = "metadata" in doc
    lines += _rows("edges", doc["edges"], last=not has_meta)
    if has_meta:
        lines.append(f'  "metadata": {json.dumps(doc["metadata"], ensure_ascii=False, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParseError(message)


def instance_from_document(doc: Any) -> DepthTwoDag:
    """Validate an already-decoded instance document.

    Errors carry ``edges[i]`` / level-key locations, not text positions; use
    :func:`parse_instance` for those.
    """
    _require(isinstance(doc, dict), "instance document must be a JSON object")
    unknown = set(doc) - {"a", "b", "c", "edges", "metadata"}
    _require(not unknown, f"unknown field(s): {', '.join(sorted(unknown))}")
    levels = []
    for key in ("a", "b", "c"):
        _require(key in doc, f"missing field {key!r}")
        lv = doc[key]
        _require(
            isinstance(lv, list) and all(isinstance(s, str) for s in lv),
            f"field {key!r} must be an array of strings",
        )
        levels.append(lv)
    edges = doc.get("edges", [])
    _require(isinstance(edges, list), "field 'edges' must be an array")
    for i, e in enumerate(edges):
        _require(
            isinstance(e, list) and len(e) == 2 and all(isinstance(s, str) for s in e),
            f"edges[{i}] must be a two-element array of vertex names",
        )
    _require(isinstance(doc.get("metadata", {}), dict), "field 'metadata' must be an object")
    return build_depth_two(levels, edges)


def _json_offsets(text: str) -> dict[str, Any]:
    """Start offsets of the top-level values, and of each edge, in a JSON object.

    Only called after a validation failure, to turn ``edges[i]`` into a
    line and column.
    """
    dec = json.JSONDecoder()
    ws = re.compile(r"\s*")
    out: dict[str, Any] = {}
    i = ws.match(text, 0).end() + 1  # past "{"
    while True:
        i = ws.match(text, i).end()
        if i >= len(text) or text[i] == "}":
            return out
        key, i = dec.raw_decode(text, i)
        i = ws.match(text, i).end() + 1  # past ":"
        i = ws.match(text, i).end()
        out[key] = i
        if key == "edges" and text.startswith("[", i):
            starts = []
            j = ws.match(text, i + 1).end()
            while j < len(text) and text[j] != "]":
                starts.append(j)
                _, j = dec.raw_decode(text, j)
                j = ws.match(text, j).end()
                if text.startswith(",", j):
                    j = ws.match(text, j + 1).end()
            out["edges[]"] = starts
            i = j + 1
        else:
            _, i = dec.raw_decode(text, i)
        i = ws.match(text, i).end()
        if text.startswith(",", i):
            i += 1


def _graph_error_at(text: str, exc: GraphError) -> ParseError:
    line = col = None
    try:
        offs = _json_offsets(text)
        if exc.edge_index is not None and exc.edge_index < len(offs.get("edges[]", ())):
            line, col = _line_col(text, offs["edges[]"][exc.edge_index])
        elif exc.subjects:
            # vertex-level failure: point at the first mention of the vertex
            m = text.find(json.dumps(exc.subjects[0], ensure_ascii=False))
            if m >= 0:
                line, col = _line_col(text, m)
    except (ValueError, IndexError):
        pass
    where = f"edges[{exc.edge_index}]: " if exc.edge_index is not None else ""
    return ParseError(f"{type(exc).__name__}: {where}{exc.message}", line, col, cause=exc)


def _parse_json_instance(text: str) -> DepthTwoDag:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        return instance_from_document(doc)
    except GraphError as exc:
        raise _graph_error_at(text, exc) from None


# DOT subset ----------------------------------------------------------------

_DOT_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<arrow>->)
  | (?P<punct>[{};\[\]=,])
  | (?P<qstr>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_\x80-\U0010ffff][A-Za-z0-9_\x80-\U0010ffff]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
    """,
    re.VERBOSE | re.DOTALL,
)


def _dot_tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if m is None:
            # reported only if the parser gets this far
            yield "bad", text[pos], pos
            return
        kind = m.lastgroup
        assert kind is not None
        if kind not in ("ws", "comment"):
            value = m.group()
            if kind == "qstr":
                value = value[1:-1].replace('\\"', '"')
                kind = "ident"
            elif kind == "arrow":
                kind = "punct"
            yield kind, value, pos
        pos = m.end()


def _parse_dot(text: str) -> DepthTwoDag:
    toks = list(_dot_tokens(text))
    k = 0

    def where(i: int) -> tuple[int, int]:
        return _line_col(text, toks[i][2] if i < len(toks) else len(text))

    def fail(msg: str, i: int) -> ParseError:
        if i < len(toks) and toks[i][0] == "bad":
            msg = f"unexpected character {toks[i][1]!r}"
        return ParseError(msg, *where(i))

    def take(value: str) -> None:
        nonlocal k
        if k >= len(toks) or toks[k][1] != value or toks[k][0] != "punct":
            got = repr(toks[k][1]) if k < len(toks) else "end of input"
            raise fail(f"expected {value!r}, got {got}", k)
        k += 1

    if k < len(toks) and toks[k][0] == "ident" and toks[k][1].lower() == "strict":
        raise fail("'strict' graphs are not supported", k)
    if k >= len(toks) or toks[k][1] != "digraph":
        raise fail("expected 'digraph'", k)
    k += 1
    if k < len(toks) and toks[k][0] == "ident":
        k += 1
    take("{")
    order: list[str] = []
    first_seen: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    edge_tok: list[int] = []

    def note(name: str, i: int) -> None:
        if name not in first_seen:
            first_seen[name] = i
            order.append(name)

    def skip_attrs() -> None:
        nonlocal k
        if k < len(toks) and toks[k][1] == "[":
            while k < len(toks) and toks[k][1] != "]":
                k += 1
            take("]")

    while k < len(toks) and toks[k][1] != "}":
        kind, value, _ = toks[k]
        if kind != "ident":
            raise fail(f"expected a vertex name, got {value!r}", k)
        if value in ("subgraph", "graph", "node", "edge") and k + 1 < len(toks) and toks[k + 1][1] in "{[":
            raise fail(f"{value!r} statements are not supported", k)
        start = k
        k += 1
        if k < len(toks) and toks[k][1] == "->":
            k += 1
            if k >= len(toks) or toks[k][0] != "ident":
                raise fail("expected a vertex name after '->'", k)
            head = toks[k][1]
            k += 1
            if k < len(toks) and toks[k][1] == "->":
                raise fail("edge chains are not supported; write one 'u -> v;' per edge", k)
            note(value, start)
            note(head, k - 1)
            edges.append((value, head))
            edge_tok.append(start)
        elif k < len(toks) and toks[k][1] == "=":
            raise fail("graph attributes are not supported", k)
        else:
            note(value, start)
        skip_attrs()
        if k < len(toks) and toks[k][1] == ";":
            k += 1
    take("}")
    if k != len(toks):
        raise fail("trailing input after the closing '}'", k)
    try:
        levels = infer_levels(order, edges)
        return build_depth_two(levels, edges)
    except GraphError as exc:
        if exc.edge_index is not None:
            i = edge_tok[exc.edge_index]
        elif exc.subjects and exc.subjects[0] in first_seen:
            i = first_seen[exc.subjects[0]]
        else:
            i = 0
        raise ParseError(f"{type(exc).__name__}: {exc.message}", *where(i), cause=exc) from None


def detect_format(text: str) -> str:
    return "json" if text.lstrip().startswith("{") else "dot"


def parse_instance(text: str, format: str | None = None) -> DepthTwoDag:
    """Parse an instance; ``format`` is ``"json"``, ``"dot"``, or ``None`` to sniff."""
    fmt = format or detect_format(text)
    if fmt == "json":
        return _parse_json_instance(text)
    if fmt == "dot":
        return _parse_dot(text)
    raise ValueError(f"unknown instance format {format!r}")


def load_instance(path: str | Path, format: str | None = None) -> DepthTwoDag:
    p = Path(path)
    if format is None and p.suffix.lower() in (".dot", ".gv"):
        format = "dot"
    return parse_instance(p.read_text(encoding="utf-8"), format)


# --------------------------------------------------------------------------
# schedules


def _name(g: DepthTwoDag, v: int | None) -> str | None:
    return None if v is None else g.name(v)


def trace_to_document(trace: Iterable[TraceEntry], g: DepthTwoDag) -> list[dict[str, Any]]:
    return [
        {
            "stage": e.stage,
            "kind": e.kind.value,
            "side": e.side.value,
            "first": _name(g, e.first),
            "second": _name(g, e.second),
            "case": None if e.case is None else e.case.value,
        }
        for e in trace
    ]


def schedule_to_document(s: Schedule, g: DepthTwoDag) -> dict[str, Any]:
    if s.n != g.n:
        raise ValueError(f"schedule covers {s.n} vertex ids, graph has {g.n}")
    return {
        "makespan": s.makespan,
        "direction": s.direction.value,
        "slots": [
            {"vertex": g.name(v), "time": slot.time, "processor": slot.processor.name}
            for v, slot in s.slots.items()
        ],
        "hinge_trace": trace_to_document(s.trace, g),
        "flags": {"optimal_claimed": s.optimal_claimed, "fallback": s.fallback},
    }


def schedule_to_json(s: Schedule, g: DepthTwoDag) -> str:
    """Canonical text: one slot and one trace entry per line."""
    doc = schedule_to_document(s, g)
    lines = [
        "{",
        f'  "makespan": {doc["makespan"]},',
        f'  "direction": {_dump(doc["direction"])},',
        *_rows("slots", doc["slots"], last=False),
        *_rows("hinge_trace", doc["hinge_trace"], last=False),
        f'  "flags": {_dump(doc["flags"])}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def _vertex(g: DepthTwoDag, name: Any, where: str) -> int:
    if not isinstance(name, str):
        raise ParseError(f"{where}: vertex must be a string")
    try:
        return g.index(name)
    except (KeyError, UnknownEndpoint):
        raise ParseError(f"{where}: unknown vertex {name!r}") from None


def _enum(cls: Any, value: Any, where: str) -> Any:
    try:
        return cls(value)
    except ValueError:
        raise ParseError(f"{where}: invalid value {value!r}") from None


def schedule_from_document(doc: Any, g: DepthTwoDag) -> Schedule:
    """Rebuild a :class:`Schedule` over ``g``'s vertex ids.

    Structural problems (unknown vertex, a vertex listed twice, bad field
    types) raise :class:`ParseError`.  Scheduling problems such as slot
    collisions or gaps are left for the feasibility check.
    """
    _require(isinstance(doc, dict), "schedule document must be a JSON object")
    for key in ("makespan", "slots"):
        _require(key in doc, f"missing field {key!r}")
    makespan = doc["makespan"]
    _require(
        isinstance(makespan, int) and not isinstance(makespan, bool) and makespan >= 0,
        "makespan must be a non-negative integer",
    )
    direction = _enum(Direction, doc.get("direction", "forward"), "direction")
    slots = doc["slots"]
    _require(isinstance(slots, list), "field 'slots' must be an array")
    times = np.zeros(g.n, dtype=np.int64)
    procs = np.zeros(g.n, dtype=np.int8)
    for i, rec in enumerate(slots):
        where = f"slots[{i}]"
        _require(isinstance(rec, dict), f"{where} must be an object")
        v = _vertex(g, rec.get("vertex"), where)
        if times[v]:
            raise ParseError(f"{where}: vertex {g.name(v)!r} listed twice")
        t = rec.get("time")
        _require(isinstance(t, int) and not isinstance(t, bool) and t >= 1, f"{where}: time must be a positive integer")
        p = rec.get("processor")
        if p in ("P1", "P2"):
            p = Processor[p]
        elif p in (1, 2) and not isinstance(p, bool):
            p = Processor(p)
        else:
            raise ParseError(f"{where}: processor must be \"P1\" or \"P2\"")
        times[v] = t
        procs[v] = int(p)
    trace = []
    raw_trace = doc.get("hinge_trace", [])
    _require(isinstance(raw_trace, list), "field 'hinge_trace' must be an array")
    for i, e in enumerate(raw_trace):
        where = f"hinge_trace[{i}]"
        _require(isinstance(e, dict), f"{where} must be an object")
        ends = [
            None if e.get(k) is None else _vertex(g, e[k], f"{where}.{k}") for k in ("first", "second")
        ]
        trace.append(
            TraceEntry(
                stage=int(e.get("stage", 0)),
                kind=_enum(HingeKind, e.get("kind"), f"{where}.kind"),
                side=_enum(Side, e.get("side"), f"{where}.side"),
                first=ends[0],
                second=ends[1],
                case=None if e.get("case") is None else _enum(Case, e["case"], f"{where}.case"),
            )
        )
    flags = doc.get("flags", {})
    _require(isinstance(flags, dict), "field 'flags' must be an object")
    return Schedule(
        times,
        procs,
        makespan,
        direction,
        tuple(trace),
        optimal_claimed=bool(flags.get("optimal_claimed", False)),
        fallback=bool(flags.get("fallback", False)),
    )


def parse_schedule(text: str, g: DepthTwoDag) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return schedule_from_document(doc, g)


def load_schedule(path: str | Path, g: DepthTwoDag) -> Schedule:
    return parse_schedule(Path(path).read_text(encoding="utf-8"), g)


# --------------------------------------------------------------------------
# Gantt table


def render_gantt(s: Schedule, names: Sequence[str] | None = None) -> str:
    """Three rows (P1, P2, time) of equal-width cells, idle cells blank.

    Cell width is one more than the longest label, where labels are the
    vertex names and the time indices.  ``names`` maps vertex ids to labels
    (default: the id itself).
    """
    label = (lambda v: names[v]) if names is not None else str
    grid = [[""] * s.makespan for _ in range(2)]
    for v, slot in s.slots.items():
        if 1 <= slot.time <= s.makespan:
            grid[slot.processor - 1][slot.time - 1] = label(v)
    ticks = [str(t) for t in range(1, s.makespan + 1)]
    width = max([len(x) for row in grid for x in row] + [len(x) for x in ticks] + [1]) + 1

    def row(head: str, cells: list[str]) -> str:
        return head + "".join(" " + c.ljust(width - 1) for c in cells)

    return "\n".join([row("P1 |", grid[0]), row("P2 |", grid[1]), row("t  |", ticks)]) + "\n"


# --------------------------------------------------------------------------
# comparison reports


def write_report(records: Iterable[dict[str, Any]], summary: dict[str, Any], out: TextIO) -> None:
    """One JSON object per line: every record, then ``{"summary": ...}``."""
    for rec in records:
        out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
    out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
