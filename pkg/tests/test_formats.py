import json

import pytest
from hypothesis import given

from uetuct.formats import (
    ParseError,
    instance_to_json,
    parse_instance,
    parse_schedule,
    render_gantt,
    schedule_to_json,
    trace_to_document,
)
from uetuct.graph import OrphanSink, SkipLevelEdge
from uetuct.schedule import Schedule
from uetuct.scheduler import reverse_schedule, schedule_depth_two
from uetuct.verify import check_feasible

from .conftest import instances

CHAIN_JSON = '{"a":["a"],"b":["b"],"c":["c"],"edges":[["a","b"],["b","c"]]}'


class TestInstanceJson:
    def test_chain(self, chain3):
        assert parse_instance(CHAIN_JSON, "json") == chain3

    def test_degenerate_flag(self):
        g = parse_instance('{"a":[],"b":["b"],"c":["c"],"edges":[["b","c"]]}')
        assert g.degenerate
        assert json.loads(instance_to_json(g))["metadata"] == {"degenerate": True}

    def test_canonical_layout(self, chain3):
        assert instance_to_json(chain3) == (
            '{\n  "a": ["a"],\n  "b": ["b"],\n  "c": ["c"],\n'
            '  "edges": [\n    ["a", "b"],\n    ["b", "c"]\n  ]\n}\n'
        )

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_instance('{"a": [\n  "x",\n  }', "json")
        assert exc.value.line == 3

    def test_graph_error_position(self):
        text = '{"a": ["a"], "b": ["b"], "c": ["c"],\n "edges": [["a", "b"],\n   ["a", "c"]]}'
        with pytest.raises(ParseError) as exc:
            parse_instance(text, "json")
        assert (exc.value.line, exc.value.column) == (3, 4)
        assert isinstance(exc.value.cause, SkipLevelEdge)
        assert "edges[1]" in str(exc.value)

    def test_vertex_error_position(self):
        text = '{"a": ["a"],\n "b": ["b"],\n "c": ["c", "d"],\n "edges": [["a", "b"], ["b", "c"]]}'
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert isinstance(exc.value.cause, OrphanSink) and exc.value.line == 3

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            '{"a": [], "b": []}',
            '{"a": [1], "b": [], "c": []}',
            '{"a": [], "b": [], "c": [], "edges": [["x"]]}',
            '{"a": [], "b": [], "c": [], "extra": 1}',
        ],
    )
    def test_schema_errors(self, text):
        with pytest.raises(ParseError):
            parse_instance(text, "json")

    @given(instances())
    def test_round_trip(self, g):
        text = instance_to_json(g)
        h = parse_instance(text)
        assert h == g and instance_to_json(h) == text


class TestDot:
    def test_chain(self, chain3):
        g = parse_instance("digraph { a -> b; b -> c; }", "dot")
        assert g == chain3

    def test_named_graph_comments_quotes_attrs(self):
        text = 'digraph G {\n  // levels are inferred\n  "x 1" [shape=box];\n  "x 1" -> y\n  y -> z; /* done */\n}'
        g = parse_instance(text)
        assert [g.name(v) for v in g.a_level] == ["x 1"]
        assert [g.name(v) for v in g.c_level] == ["z"]

    def test_isolated_node_statement(self):
        g = parse_instance("digraph { lone; a -> b; }")
        assert {g.name(v) for v in g.a_level} == {"lone", "a"}

    @pytest.mark.parametrize(
        "text, line, col",
        [
            ("digraph {\n a -> b -> c;\n}", 2, 9),
            ("graph { a -- b; }", 1, 1),
            ("digraph {\n subgraph { a; }\n}", 2, 2),
            ("digraph { a -> ; }", 1, 16),
            ("digraph { a -> b; ", 1, 19),
            ("digraph {\n a -> b;\n b -> c;\n c -> d;\n}", 4, 7),
            ("digraph {\n a -> b;\n b -> a;\n}", 2, 2),
            ("digraph { a -> b; } x", 1, 21),
            ("digraph { a @ b }", 1, 13),
        ],
    )
    def test_errors_located(self, text, line, col):
        with pytest.raises(ParseError) as exc:
            parse_instance(text, "dot")
        assert (exc.value.line, exc.value.column) == (line, col)

    def test_skip_edge_located(self):
        with pytest.raises(ParseError) as exc:
            parse_instance("digraph {\n a -> b;\n b -> c;\n a -> c;\n}", "dot")
        assert exc.value.line == 4 and isinstance(exc.value.cause, SkipLevelEdge)


class TestScheduleJson:
    def test_fields(self, chain3):
        doc = json.loads(schedule_to_json(schedule_depth_two(chain3), chain3))
        assert list(doc) == ["makespan", "direction", "slots", "hinge_trace", "flags"]
        assert doc["slots"][0] == {"vertex": "a", "time": 1, "processor": "P1"}
        assert set(doc["hinge_trace"][0]) == {"stage", "kind", "side", "first", "second", "case"}
        assert doc["flags"] == {"optimal_claimed": True, "fallback": False}

    @given(instances())
    def test_round_trip(self, g):
        s = schedule_depth_two(g)
        text = schedule_to_json(s, g)
        back = parse_schedule(text, g)
        assert back == s
        assert trace_to_document(back.trace, g) == trace_to_document(s.trace, g)
        assert schedule_to_json(back, g) == text
        assert check_feasible(g, back) == check_feasible(g, s) == []

    def test_reverse_round_trip(self, full222):
        s = reverse_schedule(schedule_depth_two(full222))
        assert parse_schedule(schedule_to_json(s, full222), full222) == s

    @pytest.mark.parametrize(
        "slots",
        [
            [{"vertex": "zz", "time": 1, "processor": "P1"}],
            [{"vertex": "a", "time": 1, "processor": "P3"}],
            [{"vertex": "a", "time": 0, "processor": "P1"}],
            [{"vertex": "a", "time": 1, "processor": "P1"}, {"vertex": "a", "time": 2, "processor": "P1"}],
        ],
    )
    def test_bad_slots(self, chain3, slots):
        with pytest.raises(ParseError):
            parse_schedule(json.dumps({"makespan": 3, "slots": slots}), chain3)


class TestGantt:
    def test_single_vertex(self):
        s = Schedule.from_slots(1, {0: (1, 1)})
        assert render_gantt(s, ["x"]).splitlines() == ["P1 | x", "P2 |  ", "t  | 1"]

    def test_width_from_longest_label(self):
        s = Schedule.from_slots(2, {0: (1, 1), 1: (2, 2)})
        assert render_gantt(s, ["long", "x"]).splitlines()[1] == "P2 |      x   "

    @given(instances())
    def test_shape(self, g):
        s = schedule_depth_two(g)
        lines = render_gantt(s, g.names).splitlines()
        assert len(lines) == 3
        assert len({len(x) for x in lines}) == 1
        width = (len(lines[0]) - 4) // max(s.makespan, 1)
        assert lines[2].split() == ["t", "|", *map(str, range(1, s.makespan + 1))]
        assert width * s.makespan == len(lines[0]) - 4
