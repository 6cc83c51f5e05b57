import io
import json

import pytest

from exdir import cache
from exdir import graph as gr
from exdir.cli import main, play_session


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def fixed_clock(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")


@pytest.mark.parametrize("spec,expected", [("cycle:6", 4), ("path:4", 4), ("complete:5", 2)])
def test_solve(spec, expected):
    code, out = run("solve", "--graph", spec, "--start", "0")
    assert code == 0 and out.startswith(f"f_d = {expected}\n")


def test_solve_trace():
    code, out = run("solve", "--graph", "cycle:4", "--trace")
    steps = [line for line in out.splitlines() if line.startswith("step")]
    assert steps[-1].endswith("visited=4")


def test_solve_json_is_byte_stable():
    _, a = run("solve", "--graph", "lattice:3x2", "--start", "1", "--json")
    _, b = run("solve", "--graph", "lattice:3x2", "--start", "1", "--json")
    assert a == b
    rec = json.loads(a)
    assert set(rec) == {"graph_hash", "family_spec", "start", "f_d", "closed_min", "timestamp"}
    assert rec["f_d"] == 4 and rec["closed_min"] == 4 and rec["timestamp"] == "2023-11-14T22:13:20Z"


def test_solve_graph_file(tmp_path):
    p = tmp_path / "c5.txt"
    p.write_text("5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    code, out = run("solve", "--graph", str(p), "--json")
    rec = json.loads(out)
    assert code == 0 and rec["f_d"] == 4 and rec["family_spec"] is None


def test_out_appends_records(tmp_path):
    out_file = tmp_path / "records.jsonl"
    for start in (0, 1):
        run("solve", "--graph", "path:3", "--start", str(start), "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    assert [json.loads(x)["start"] for x in lines] == [0, 1]


def test_cache_hit_matches_fresh(tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    code, out = run("solve", "--graph", "lollipop:6,3", "--start", "5", "--cache", str(path), "--json")
    assert code == 0 and "(cached)" not in out
    _, again = run("solve", "--graph", "lollipop:6,3", "--start", "5", "--cache", str(path))
    assert "(cached)" in again
    assert len(path.read_text().splitlines()) == 1
    # recompute and compare with what the cache serves
    cached = cache.lookup(str(path), cache.graph_hash(gr.lollipop(6, 3)), 5)
    fresh = cache.ResultRecord.from_json(out.strip())
    assert cached == fresh


def test_cache_env_default(tmp_path, monkeypatch):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv("EXDIR_CACHE", str(path))
    code, _ = run("solve", "--graph", "cycle:5", "--cache")
    assert code == 0 and path.exists()


def test_exit_codes(tmp_path):
    assert run("solve", "--graph", "lattice:5x4")[0] == 3
    assert run("solve", "--graph", "lattice:5x4", "--force-cap")[0] == 0
    assert run("solve", "--graph", "nosuch:4")[0] == 2
    assert run("solve", "--graph", "path:3", "--start", "9")[0] == 2
    assert run("bogus")[0] == 2
    assert run("solve", "--graph", "path:3", "--out", str(tmp_path / "missing" / "x"))[0] == 4


def test_closed_commands():
    assert run("closed", "--graph", "cycle:6", "--min")[1] == "min closed size = 4, witness = {0,1,3,4}\n"
    assert run("closed", "--graph", "cycle:4", "--check", "0,2")[1] == "{0,2} is not closed\n"
    assert run("closed", "--graph", "path:4", "--peel", "0,1")[1] == "core = {}\nX_1 = {0,1}\n"
    code, out = run("closed", "--graph", "complete:5", "--containing", "3")
    assert code == 0 and "= 2," in out


def test_formula_commands():
    assert run("formula", "--family", "cycle", "--n", "9")[1] == "f*(9) = 6\n"
    assert run("formula", "--family", "lattice", "--n", "6", "--m", "4")[1] == "bounds (10,12)\n"
    assert run("formula", "--family", "lattice", "--n", "5", "--m", "3")[1] == "f_d(L_{5,3}) = 7\n"
    a = str(gr.spider_handle_leaf(4))
    assert run("formula", "--family", "tree", "--graph", "spider:4;5,5", "--start", a)[1] == "f_d = 15\n"
    assert run("formula", "--family", "treelb", "--graph", "spider:4;5,5")[1] == "diam + 1 = 11\n"
    assert run("formula", "--family", "tree", "--graph", "cycle:4")[0] == 2


def test_simulate_commands():
    code, out = run("simulate", "--graph", "path:6", "--start", "0", "--sequence", "1,3,2,3,2")
    assert code == 0 and "score = 6" in out and "all steps forced" in out
    assert "score = 2" in run("simulate", "--graph", "path:4", "--sequence", "1,1,1,1")[1]
    code, out = run("simulate", "--graph", "path:4", "--sequence", "9")
    assert code == 2 and out.startswith("invalid-at-step-1")


def test_verify_commands():
    code, out = run("verify", "--suite", "cycles", "--max-n", "12")
    assert code == 0 and out.splitlines()[-1] == "cycles: 10/10 pass"
    code, out = run("verify", "--suite", "counterexample")
    assert code == 0 and "1/1 pass" in out


def test_verify_parallel_report_is_ordered():
    serial = run("verify", "--suite", "trees", "--count", "12", "--max-n", "8")[1]
    parallel = run("verify", "--suite", "trees", "--count", "12", "--max-n", "8", "--parallel", "3")[1]
    assert serial == parallel


def test_verify_failure_exit(monkeypatch):
    import exdir.verify as verify
    monkeypatch.setattr(verify, "f_star_cycle", lambda n: -1)
    code, out = run("verify", "--suite", "cycles", "--max-n", "4")
    assert code == 1 and "[FAIL]" in out


def _play(spec, role, moves, start=0):
    inp = io.StringIO("".join(f"{m}\n" for m in moves))
    out = io.StringIO()
    final = play_session(gr.generate(spec), start, role, inp, out)
    return final, out.getvalue()


@pytest.mark.parametrize("replies", [[1, 3, 2, 0] * 3, [3, 1, 0, 2] * 3, [1, 2, 3, 0, 1, 2] * 2])
def test_play_director_on_c4_always_reaches_four(replies):
    final, out = _play("cycle:4", "director", replies)
    assert final == 4 and "game over: 4 vertices visited" in out


@pytest.mark.parametrize("calls", [[1] * 5, ["x", 7, 1]])
def test_play_explorer_on_k4_held_to_two(calls):
    final, out = _play("complete:4", "explorer", calls)
    assert final == 2 and "game over" in out


def test_play_quit_mid_session():
    final, out = _play("path:6", "explorer", ["1", "q"])
    assert final == 2 and "session ended: 2 vertices visited so far" in out


def test_play_eof_is_quit():
    final, out = _play("cycle:5", "director", [])
    assert final == 1 and "session ended" in out


def test_play_illegal_move_reprompts():
    final, out = _play("path:4", "director", [9, 0, 1, 2, 3] * 4)
    assert "illegal" in out and final == 4
