import io
import json

import pytest

from uetuct.cli import cli_main

CHAIN = '{"a":["a"],"b":["b"],"c":["c"],"edges":[["a","b"],["b","c"]]}'
CROSS_GAP = {
    "makespan": 3,
    "direction": "forward",
    "slots": [
        {"vertex": "a", "time": 1, "processor": "P1"},
        {"vertex": "b", "time": 2, "processor": "P2"},
        {"vertex": "c", "time": 3, "processor": "P2"},
    ],
    "hinge_trace": [],
    "flags": {"optimal_claimed": False, "fallback": False},
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def chain_file(tmp_path):
    p = tmp_path / "chain3.json"
    p.write_text(CHAIN)
    return p


def test_solve_gantt(chain_file):
    code, out, _ = run("solve", chain_file, "--format", "gantt")
    assert code == 0
    assert out.splitlines() == ["P1 | a b c", "P2 |      ", "t  | 1 2 3"]


def test_solve_then_verify(chain_file, tmp_path):
    code, out, _ = run("solve", chain_file)
    assert code == 0 and json.loads(out)["flags"]["optimal_claimed"]
    sched = tmp_path / "s.json"
    sched.write_text(out)
    code, out, _ = run("verify", chain_file, sched)
    assert code == 0 and out.startswith("feasible")


def test_verify_cross_gap(chain_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(CROSS_GAP))
    code, out, _ = run("verify", chain_file, bad)
    assert code == 1
    assert "CrossProcGap(a, b)" in out


def test_verify_reports_upper_bound(tmp_path):
    star = {
        "a": ["a"],
        "b": ["b1", "b2", "b3"],
        "c": ["c"],
        "edges": [["a", "b1"], ["a", "b2"], ["a", "b3"], ["b1", "c"], ["b2", "c"], ["b3", "c"]],
    }
    inst = tmp_path / "star.json"
    inst.write_text(json.dumps(star))
    _, out, _ = run("solve", inst)
    sched = tmp_path / "s.json"
    sched.write_text(out)
    code, out, _ = run("verify", inst, sched)
    assert code == 0 and "BoundExceeded(upper): makespan 5 > 4" in out
    code, _, _ = run("verify", inst, sched, "--strict-bounds")
    assert code == 1


def test_solve_dot_and_reverse_view(tmp_path):
    p = tmp_path / "g.dot"
    p.write_text("digraph { a1 -> b1; a2 -> b1; a1 -> b2; a2 -> b2; }")
    code, out, _ = run("solve", p, "--format", "gantt", "--reverse-view")
    assert code == 0
    assert out.splitlines()[0] == "P1 | b1    a1"


def test_solve_degenerate_uses_single_layer(tmp_path):
    p = tmp_path / "d.json"
    p.write_text('{"a":[],"b":["b"],"c":["c"],"edges":[["b","c"]]}')
    code, out, _ = run("solve", p)
    assert code == 0 and json.loads(out)["makespan"] == 2


def test_oracle(chain_file):
    code, out, _ = run("oracle", chain_file, "--format", "gantt")
    assert code == 0 and out.splitlines()[2] == "t  | 1 2 3"


def test_oracle_limit(chain_file):
    code, _, err = run("oracle", chain_file, "--limit", "2")
    assert code == 2 and "exceeds" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        ["solve"],
        ["solve", "/nonexistent/x.json"],
        ["bench", "--sizes", "a,b"],
        ["gen", "--na", "1", "--nb", "1", "--nc", "1", "--p", "2"],
        ["compare", "--random", "3"],
        ["compare", "--exhaustive", "--max-per-level", "4"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"a":["a"],"b":["b"],"c":["c"],"edges":[["a","c"]]}')
    code, _, err = run("solve", p)
    assert code == 2 and "SkipLevelEdge" in err and "line 1" in err


def test_gen_random_is_canonical_and_seeded():
    a = run("gen", "--na", "2", "--nb", "3", "--nc", "2", "--seed", "4")
    b = run("gen", "--na", "2", "--nb", "3", "--nc", "2", "--seed", "4")
    assert a == b and a[0] == 0
    assert set(json.loads(a[1])) <= {"a", "b", "c", "edges", "metadata"}


def test_gen_exhaustive_lines():
    code, out, _ = run("gen", "--na", "2", "--nb", "1", "--nc", "1", "--exhaustive")
    assert code == 0 and len(out.splitlines()) == 3


def test_compare_exhaustive_report(tmp_path):
    rep = tmp_path / "r.jsonl"
    code, out, _ = run("compare", "--exhaustive", "--max-per-level", "2", "--report", rep)
    assert code == 0
    assert json.loads(out) == {"total": 128, "matches": 128, "mismatches": 0, "errors": 0}
    assert json.loads(rep.read_text().splitlines()[-1])["summary"]["total"] == 128


def test_compare_random():
    code, out, _ = run("compare", "--random", "20", "--sizes", "2,3,2", "--seed", "1")
    assert code == 0 and json.loads(out)["matches"] == 20


def test_bench_csv():
    code, out, _ = run("bench", "--sizes", "30,300", "--instances", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "size,instances,total_ms,ms_per_instance,edges"
    assert [x.split(",")[:2] for x in lines[1:]] == [["30", "2"], ["300", "2"]]
