import json
from fractions import Fraction as F

import pytest

from tfsm import Pfa, Tfsm, TimedGuard, classify, corpus, gen_bn
from tfsm.cli import run_command
from tfsm.textformat import ParseError, parse, parse_seq, parse_word, serialize, time_text, to_dot


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_parse_S1(S1):
    assert len(S1.transitions) == 11
    assert S1.transitions[0].guard == TimedGuard(1, 3)


def test_parse_point_guard_and_comment():
    m = parse("tfsm P  # name\nstates s\ninputs i\noutputs o\ntrans s i [1,1] o 2 s # point\n")
    assert m.transitions[0].guard == TimedGuard.at(1)


def test_reversed_guard_is_an_error():
    text = "tfsm X\nstates s0 s1\ninputs i1\noutputs o1\ntrans s0 i1 [3,1) o1 4 s1\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (5, 13)
    assert "lo < hi" in str(err.value)


def test_zero_transitions_is_valid():
    m = parse("tfsm E\nstates s\ninputs i\noutputs o\n")
    assert isinstance(m, Tfsm) and m.transitions == ()
    assert classify(m).weakly_complete


@pytest.mark.parametrize("text, line, column", [
    ("tfsm X\nstates s\ninputs i\noutputs o\ntrans s j [1,2) o 1 s\n", 5, 9),
    ("tfsm X\nstates s\ninputs i\noutputs o\ntrans s i [1,2) o 1 t\n", 5, 21),
    ("tfsm X\nstates s\ninputs i\noutputs o\ntrans s i [1,2) o 0 s\n", 5, 19),
    ("tfsm X\nstates s\ninputs i\noutputs o\ntrans s i [1,2) o 1\n", 5, 1),
    ("tfsm X\nstates s s\n", 2, 10),
    ("states s\n", 1, 1),
    ("", 1, 1),
    ("tfsm X\nstates s\ninputs i\n", 3, 1),
    ("tfsm X\nstates s\ninputs i\noutputs o\ntrans s i [2,3] o 1 s\n", 5, 11),
    ("tfsm X\nstates s\ninputs i\noutputs o\ntfsm Y\n", 5, 1),
    ("pfa X\nstates q\ninputs a\noutputs o\n", 4, 1),
])
def test_positioned_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_fsm_and_pfa_documents(M3):
    assert M3.transitions and len(M3.transitions[0]) == 4
    a = parse("pfa A\nstates q0 q1\ninputs a\ntrans q0 a q1\n")
    assert isinstance(a, Pfa) and a.transitions == {("q0", "a"): "q1"}
    with pytest.raises(ParseError):
        parse("pfa A\nstates q0 q1\ninputs a\ntrans q0 a q1\ntrans q0 a q0\n")


@pytest.mark.parametrize("name", corpus.NAMES)
def test_round_trip(name):
    m = corpus.load(name)
    text = serialize(m)
    assert parse(text) == m
    assert serialize(parse(text)) == text


def test_round_trip_pfa_and_generated():
    a = Pfa("A", ["q0", "q1"], ["a", "b"], {("q0", "a"): "q1", ("q1", "b"): "q1"})
    assert parse(serialize(a)) == a
    b = gen_bn(6)
    assert parse(serialize(b)) == b


def test_parse_seq():
    assert parse_seq("i1@21/10,i2@4.2") == (("i1", F(21, 10)), ("i2", F(21, 5)))
    assert parse_seq("") == ()
    assert parse_word("a, b") == ("a", "b")
    with pytest.raises(ParseError):
        parse_seq("i1")
    with pytest.raises(ParseError):
        parse_seq("i1@x")


def test_time_text():
    assert time_text(F(42, 10)) == "21/5"
    assert time_text(2) == "2/1"


def test_dot_labels(S4):
    dot = to_dot(S4)
    assert '"s0" -> "s2" [label="i1,[0,2)/o1,+3"];' in dot
    from tfsm import build_region_fsm
    rdot = to_dot(build_region_fsm(S4))
    assert '"s2" -> "s0" [label="i1,[1,2)/o2,+4"];' in rdot


def test_derive_tree_S2(capsys):
    code, out = run_json(capsys, "derive", "--goal", "hs", "--method", "tree", str(corpus.path("S2")))
    assert code == 0
    assert out["exists"] is True and out["verified"] is True
    assert out["sequence"] == [{"input": "i1", "t": "21/10"}, {"input": "i2", "t": "21/5"},
                               {"input": "i1", "t": "63/10"}]
    assert set(out) >= {"query", "machine", "exists", "sequence", "verified", "stats"}
    assert set(out["stats"]) == {"nodes", "depth"}


def test_derive_point_B4(capsys):
    code, out = run_json(capsys, "derive", "--goal", "hs", "--method", "point", str(corpus.path("B4")))
    assert code == 1
    assert out["exists"] is False and out["sequence"] is None


def test_check_S1(capsys):
    code, out = run_json(capsys, "check", "--goal", "hs", "--seq", "i1@2,i2@4", str(corpus.path("S1")))
    assert code == 1 and out["verified"] is False
    code, out = run_json(capsys, "check", "--goal", "hs", "--seq", "i1@2", str(corpus.path("S1")))
    assert code == 0 and out["verified"] is True


def test_output_is_deterministic(capsys):
    argv = ["derive", "--goal", "ss", "--method", "region", str(corpus.path("S2"))]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_other_commands(capsys):
    code, out = run_json(capsys, "analyze", str(corpus.path("S1")))
    assert code == 0 and out["classification"]["weakly_complete"] is True
    assert out["counts"]["transitions"] == 11
    code, out = run_json(capsys, "simulate", "--from", "s0", "--seq", "i1@2,i2@4,i2@5", str(corpus.path("S1")))
    assert code == 0 and out["final"] == "s0"
    assert out["timed_out"] == [{"tau": "5/1", "outputs": ["o2"]}, {"tau": "6/1", "outputs": ["o1", "o3"]}]
    code, out = run_json(capsys, "region", str(corpus.path("S4")))
    assert code == 0 and len(out["transitions"]) == 12
    code, out = run(capsys, "region", "--dot", str(corpus.path("B4")))
    assert code == 0 and out.startswith("digraph")
    code, out = run(capsys, "gen-bn", "5")
    assert code == 0 and parse(out) == gen_bn(5)
    code, out = run_json(capsys, "oracle", "--goal", "hs", "--max-len", "3", str(corpus.path("S2")))
    assert code == 0 and len(out["sequence"]) == 3
    code, out = run_json(capsys, "derive", "--goal", "hs", "--method", "tree", str(corpus.path("M3")))
    assert code == 1


def test_exit_codes(capsys, tmp_path, monkeypatch):
    assert run(capsys, "derive", "--goal", "hs", "--method", "region", str(corpus.path("B4")))[0] == 3
    assert run(capsys, "derive", "--goal", "hs", "--method", "tree", str(corpus.path("B4")))[0] == 3
    assert run(capsys, "gen-bn", "3")[0] == 2
    assert run(capsys, "derive", "--goal", "xx", str(corpus.path("S2")))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.tfsm"))[0] == 2
    bad = tmp_path / "bad.tfsm"
    bad.write_text("tfsm X\nstates s0 s1\ninputs i1\noutputs o1\ntrans s0 i1 [3,1) o1 4 s1\n")
    assert run_command(["analyze", str(bad)]) == 2
    assert "line 5, column 13" in capsys.readouterr().err
    monkeypatch.setenv("TFSM_NODE_BUDGET", "2")
    assert run(capsys, "derive", "--goal", "hs", "--method", "point", str(corpus.path("B4")))[0] == 4


def test_class_error_names_the_precondition(capsys):
    run_command(["derive", "--goal", "hs", "--method", "tree", str(corpus.path("B4"))])
    assert "half-open guards only" in capsys.readouterr().err
