import json
import subprocess
import sys

import pytest

from monopaths.cli import EXIT_DEFECT, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, main
from monopaths.cycles import section_seven_family
from monopaths.graph import ColouredGraph, classes_for_shape
from monopaths.graphio import dumps, graph_to_json

from conftest import split_graph


def _write(tmp_path, g, name="g.json"):
    p = tmp_path / name
    p.write_text(dumps(graph_to_json(g)))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    lines = [line for line in out.out.splitlines() if line.strip()]
    assert len(lines) == 1
    return code, json.loads(lines[0]), lines[0], out.err


def _sorted_keys(raw):
    obj = json.loads(raw)
    return raw == json.dumps(obj, sort_keys=True, separators=(",", ":"))


def test_partition_ok(tmp_path, capsys):
    code, out, raw, _ = _run(capsys, ["partition", _write(tmp_path, ColouredGraph.from_shape((2, 1, 1)))])
    assert code == EXIT_OK
    assert out["v"] == 1 and out["mode"] == "paths"
    assert _sorted_keys(raw)


def test_partition_unfair_is_hypothesis(tmp_path, capsys):
    code, out, _, _ = _run(capsys, ["partition", _write(tmp_path, ColouredGraph.from_shape((3, 1, 1)))])
    assert code == EXIT_HYPOTHESIS
    assert out["error"] == "hypothesis" and "unfair" in out["message"]


def test_partition_split_returns_witness(tmp_path, capsys):
    g = split_graph((6, 6), A=[0], C=[6, 7, 8])
    code, out, raw, _ = _run(capsys, ["partition", _write(tmp_path, g)])
    assert code == EXIT_HYPOTHESIS
    w = out["witness"]
    assert sorted(w["A"] + w["B"]) == list(range(6)) and sorted(w["C"] + w["D"]) == list(range(6, 12))
    assert _sorted_keys(raw)


def test_bad_json_is_input_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out, _, _ = _run(capsys, ["partition", str(p)])
    assert code == EXIT_INPUT and out["error"] == "input"


def test_missing_file_is_input_error(tmp_path, capsys):
    code, out, _, _ = _run(capsys, ["partition", str(tmp_path / "nope.json")])
    assert code == EXIT_INPUT


def test_incomplete_graph_is_input_error(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"v": 1, "classes": [[0], [1], [2]], "edges": [[0, 1, "R"]]}))
    code, _, _, _ = _run(capsys, ["partition", str(p)])
    assert code == EXIT_INPUT


@pytest.mark.parametrize("mode,extra", [("path-cycle", []), ("matchings", []), ("cycles", ["--delta", "0.01"])])
def test_partition_modes(tmp_path, capsys, mode, extra):
    g = ColouredGraph.from_shape((3, 3)) if mode == "cycles" else ColouredGraph.from_code(classes_for_shape((2, 2, 2)), 0b101101010110)
    code, out, raw, _ = _run(capsys, ["partition", _write(tmp_path, g), "--mode", mode, *extra])
    assert code == EXIT_OK and out["mode"] == mode and _sorted_keys(raw)


def test_cycles_mode_needs_delta(tmp_path, capsys):
    code, _, _, _ = _run(capsys, ["partition", _write(tmp_path, ColouredGraph.from_shape((3, 3))), "--mode", "cycles"])
    assert code == EXIT_INPUT


def test_trace_lines_and_replay(tmp_path, capsys):
    g = ColouredGraph.from_code(classes_for_shape((3, 3, 2)), 0x5A5A5)
    trace = tmp_path / "t.jsonl"
    code, first, _, _ = _run(capsys, ["partition", _write(tmp_path, g), "--trace", str(trace)])
    assert code == EXIT_OK
    events = [json.loads(line) for line in trace.read_text().splitlines()]
    assert events[0]["kind"] == "input" and events[-1]["kind"] == "result"
    assert all(e["v"] == 1 for e in events)
    assert any(e["kind"] == "step" for e in events)
    code, out, _, _ = _run(capsys, ["partition", "--replay", str(trace)])
    assert code == EXIT_OK and out["replay"] == "identical"
    assert out["result"] == {k: v for k, v in first.items() if k != "v"}


def test_tampered_trace_is_defect(tmp_path, capsys):
    g = ColouredGraph.from_shape((2, 2, 1))
    trace = tmp_path / "t.jsonl"
    main(["partition", _write(tmp_path, g), "--trace", str(trace)])
    capsys.readouterr()
    lines = trace.read_text().splitlines()
    lines[-1] = json.dumps({"v": 1, "kind": "result", "hash": "0" * 64})
    trace.write_text("\n".join(lines) + "\n")
    code, out, _, _ = _run(capsys, ["partition", "--replay", str(trace)])
    assert code == EXIT_DEFECT and out["replay"] == "different"


def test_trace_to_stderr(tmp_path, capsys):
    _, _, _, err = _run(capsys, ["partition", _write(tmp_path, ColouredGraph.from_shape((1, 1, 1))), "--trace"])
    events = [json.loads(line) for line in err.splitlines()]
    assert [e["kind"] for e in events][0] == "input"


def test_mono_seed_recorded(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MONO_SEED", "4242")
    trace = tmp_path / "t.jsonl"
    g = split_graph((8, 8), A=[0, 1, 2], C=[8, 9], flips=[(0, 8), (3, 12)])
    _run(capsys, ["partition", _write(tmp_path, g), "--trace", str(trace)])
    head = json.loads(trace.read_text().splitlines()[0])
    assert head["seed"] == 4242
    # an explicit --seed wins over the environment
    _run(capsys, ["--seed", "7", "partition", _write(tmp_path, g), "--trace", str(trace)])
    assert json.loads(trace.read_text().splitlines()[0])["seed"] == 7


def test_mono_seed_reproducible(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MONO_SEED", "99")
    path = _write(tmp_path, ColouredGraph.from_code(classes_for_shape((7, 7)), 0x2A5F3C19E4B0D7))
    a = _run(capsys, ["partition", path])[2]
    b = _run(capsys, ["partition", path])[2]
    assert a == b


def test_verify(capsys):
    code, out, raw, _ = _run(capsys, ["verify", "--shape", "2,1,1", "--theorem", "t14"])
    assert code == EXIT_OK and out["total"] == 7 and _sorted_keys(raw)
    assert out["report_hash"] == "b39247ef131f8dcab0655bf2d4f2cafebbc5d4d946a1c8f91da60ea16ef1234c"


def test_verify_no_symmetry(capsys):
    code, out, _, _ = _run(capsys, ["verify", "--shape", "2,1,1", "--theorem", "t14", "--no-symmetry"])
    assert code == EXIT_OK and out["total"] == 32


@pytest.mark.parametrize("argv,expected", [
    (["verify", "--shape", "2,x", "--theorem", "t14"], EXIT_INPUT),
    (["verify", "--shape", "2,1,1", "--theorem", "nope"], EXIT_HYPOTHESIS),
    (["verify", "--shape", "2,2", "--theorem", "t14"], EXIT_HYPOTHESIS),
])
def test_verify_errors(capsys, argv, expected):
    code, _, _, _ = _run(capsys, argv)
    assert code == expected


def test_distance(tmp_path, capsys):
    g = split_graph((4, 4), A=[0, 1, 2], C=[4], flips=[(0, 4), (1, 5), (3, 7)])
    code, out, raw, _ = _run(capsys, ["distance", _write(tmp_path, g), "--exact"])
    assert code == EXIT_OK and out["deleted_count"] == 3 and _sorted_keys(raw)
    code, out, _, _ = _run(capsys, ["distance", _write(tmp_path, g), "--heuristic"])
    assert code == EXIT_OK and out["deleted_count"] >= 3


def test_distance_triangle(tmp_path, capsys):
    # one deletion makes the triangle bipartite, and then any colouring is a split
    code, out, _, _ = _run(capsys, ["distance", _write(tmp_path, ColouredGraph.from_shape((1, 1, 1)))])
    assert code == EXIT_OK and out["deleted_count"] == 1 and out["exactness"] == "exact"


def test_probe_family_member(tmp_path, capsys):
    name, g = section_seven_family()[0]
    path = _write(tmp_path, g)
    code, out, raw, _ = _run(capsys, ["probe-two-cycles", path])
    assert code == EXIT_OK and out["status"] == "proven-none" and _sorted_keys(raw)
    code, out, _, _ = _run(capsys, ["probe-two-cycles", path, "--any-colours"])
    assert code == EXIT_OK and out["status"] == "proven-none"


def test_probe_found(tmp_path, capsys):
    code, out, _, _ = _run(capsys, ["probe-two-cycles", _write(tmp_path, ColouredGraph.from_shape((2, 2, 2)))])
    assert code == EXIT_OK and out["status"] == "found"
    assert sorted(v for c in out["cycles"] for v in c["vertices"]) == list(range(6))


def test_bench(capsys):
    code, out, raw, _ = _run(capsys, ["bench", "--repeat", "1"])
    assert code == EXIT_OK and out["kernels"] and _sorted_keys(raw)
    assert out["backend"] in ("cython", "python")


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "monopaths.cli", "verify", "--shape", "1,1,1", "--theorem", "t14"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["v"] == 1
