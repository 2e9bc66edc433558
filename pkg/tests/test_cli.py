import json
import subprocess
import sys

import pytest

from goodrhythm.cli import main, parse_rhythm
from goodrhythm.errors import ParseError

from golden_traces import CORPUS_ROWS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_three_notations():
    assert parse_rhythm("1001001000100100").sorted_onsets == (0, 3, 6, 10, 13)
    assert parse_rhythm("0,3,7,10,12", 16).sorted_onsets == (0, 3, 7, 10, 12)
    assert parse_rhythm("12,0,10,7,3", 16).sorted_onsets == (0, 3, 7, 10, 12)
    r = parse_rhythm("i:3,4,7,2")
    assert r.pulses == 16 and r.sorted_onsets == (0, 3, 7, 14)
    assert parse_rhythm("i:3,3,3,3,4@2").sorted_onsets == (2, 5, 8, 11, 14)


@pytest.mark.parametrize("text,pulses", [
    ("10201", None), ("0,3,7", None), ("0,3,16", 16), ("0,3,3", 16),
    ("i:3,4", 8), ("", None), ("0000", None), ("i:3,x", None), ("1001", 5),
])
def test_parse_errors(text, pulses):
    with pytest.raises(ParseError):
        parse_rhythm(text, pulses)


def test_trace_json_schema(capsys):
    code, out, _ = run(capsys, "trace", "i:3,4,7,2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["pulses", "onsets", "steps", "distance_to_cycle", "terminal_class", "period", "cap_hit"]
    assert list(doc["steps"][0]) == ["k", "a", "d", "width"]
    assert doc["pulses"] == 16 and doc["onsets"] == [0, 3, 7, 14]
    assert doc["steps"][0] == {"k": 0, "a": [0, 3, 7, 14], "d": [3, 4, 7, 2], "width": 5}
    assert (doc["distance_to_cycle"], doc["terminal_class"], doc["period"], doc["cap_hit"]) == (4, "FixedWidth0", 1, False)
    assert isinstance(doc["cap_hit"], bool)


def test_trace_json_is_byte_stable(capsys):
    _, first, _ = run(capsys, "trace", "0,3,6,10,11", "--pulses", "16", "--format", "json")
    _, second, _ = run(capsys, "trace", "0,3,6,10,11", "--pulses", "16", "--format", "json")
    assert first == second


def test_trace_soukous_rows(capsys):
    code, out, _ = run(capsys, "trace", "0,3,6,10,11", "--pulses", "16", "--format", "json")
    doc = json.loads(out)
    got = [(tuple(s["a"]), tuple(s["d"])) for s in doc["steps"][:4]]
    assert got == CORPUS_ROWS["Soukous"]
    assert doc["distance_to_cycle"] == 3 and doc["period"] == 5
    assert len(doc["steps"]) == 4 + 5


def test_trace_regular_is_one_row(capsys):
    _, out, _ = run(capsys, "trace", "1000100010001000", "--format", "json")
    doc = json.loads(out)
    assert len(doc["steps"]) == 1 and doc["terminal_class"] == "FixedWidth0"


def test_trace_bossa_starts_on_cycle(capsys):
    _, out, _ = run(capsys, "trace", "1001001000100100", "--format", "json")
    doc = json.loads(out)
    assert doc["distance_to_cycle"] == 0 and doc["steps"][0]["d"] == [3, 3, 4, 3, 3]


def test_trace_csv(capsys):
    code, out, _ = run(capsys, "trace", "i:3,4,7,2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "k,a,d,width"
    assert lines[1] == "0,0;3;7;14,3;4;7;2,5"
    assert lines[-1] == "4,7;11;15;3,4;4;4;4,0"


def test_trace_text_and_out_file(capsys, tmp_path):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "trace", "i:3,4,7,2", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "(7,11,15,3)" in text and "FixedWidth0" in text


def test_trace_cap_exit_code(capsys):
    code, out, err = run(capsys, "trace", "i:3,3,4,1,5", "--max-steps", "1", "--format", "json")
    assert code == 3
    assert json.loads(out)["cap_hit"] is True


@pytest.mark.parametrize("argv,onsets", [
    (["0,4,6,10,12", "--pulses", "16"], "2,5,8,11,14"),
    (["0,3,6,10,14", "--pulses", "16"], "1,4,8,11,14"),
    (["1001001000100100"], "0,3,6,10,13"),
])
def test_even(capsys, argv, onsets):
    code, out, _ = run(capsys, "even", *argv, "--format", "json")
    info = json.loads(out)
    assert code == 0 and info["onsets"] == onsets
    # every notation re-parses to the same rhythm
    a = parse_rhythm(info["binary"])
    assert a == parse_rhythm(info["onsets"], 16) == parse_rhythm(info["intervals"])


def test_even_shiko_intervals(capsys):
    _, out, _ = run(capsys, "even", "0,4,6,10,12", "--pulses", "16")
    assert "i:3,3,3,3,4@2" in out


@pytest.mark.parametrize("vec,expect", [
    ("3,3,4,3,3", "PeriodicWidth1OddMin  width 1  min odd  period 5"),
    ("4,4,4,4", "FixedWidth0"),
    ("2,3,2,3", "FixedWidth1EvenMin"),
    ("3,4,7,2", "Transient"),
])
def test_classify(capsys, vec, expect):
    code, out, _ = run(capsys, "classify", vec)
    assert code == 0 and out.startswith(expect)


def test_classify_json(capsys):
    _, out, _ = run(capsys, "classify", "1,2,1,2", "--format", "json")
    assert json.loads(out) == {"vector": [1, 2, 1, 2], "class": "PeriodicWidth1OddMin",
                               "width": 1, "min_parity": "odd", "period": 2}


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-pulses", "3", "--random-trials", "20")
    assert code == 0 and "0 failed" in out


def test_verify_strict_counts_deviation(capsys):
    code, out, _ = run(capsys, "verify", "--max-pulses", "4", "--random-trials", "20", "--strict")
    assert code == 3 and "DEVIATION" in out


def test_verify_mutated(capsys):
    code, out, _ = run(capsys, "verify", "--max-pulses", "5", "--random-trials", "50", "--inject", "fc-parity")
    assert code == 3 and "first witness" in out


@pytest.mark.parametrize("bad", ["2", "13"])
def test_verify_range(capsys, bad):
    assert run(capsys, "verify", "--max-pulses", bad)[0] == 2


def test_graph(capsys, tmp_path):
    target = tmp_path / "g.dot"
    code, _, err = run(capsys, "graph", "4", "2", "--out", str(target))
    assert code == 0 and "3 nodes" in err
    assert target.read_text().count("->") == 3
    assert run(capsys, "graph", "4", "4")[0] == 2


def test_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [(r["name"], r["dist_c"]) for r in rows] == [
        ("Bossa", 0), ("Shiko", 1), ("Son", 1), ("Rumba", 1), ("Soukous", 3), ("Gahu", 3)]
    assert {r["class"] for r in rows} == {"PeriodicWidth1OddMin"}


def test_corpus_mismatch_exit(capsys, monkeypatch):
    from goodrhythm import cli, corpus
    broken = (corpus.CorpusEntry("Bossa", (0, 3, 6, 10, 13), 2),)
    monkeypatch.setattr(cli, "CORPUS", broken)
    assert run(capsys, "corpus")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "trace", "0,3", "--format", "xml")[0] == 2
    assert run(capsys, "trace", "0,3")[0] == 2
    assert run(capsys, "trace", "10000000")[0] == 2
    assert run(capsys, "trace", "i:3,4,7,2", "--max-steps", "0")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "goodrhythm", "classify", "4,4,4,4"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("FixedWidth0")
