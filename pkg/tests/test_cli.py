import json
import subprocess
import sys

import pytest

from ordalg.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "one": write("one.json", {"elements": ["x"], "leq": []}),
        "chain": write("chain.json", {"elements": ["x0", "x1"], "leq": [["x0", "x1"]]}),
        "cycle": write("cycle.json", {"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}),
        "bounded2": write("bounded2.json", {
            "builtin": "bounded-poset",
            "carrier": {"elements": ["0", "1"], "leq": [["0", "1"]]},
            "ops": {"0": "0", "1": "1"}}),
        "pair": write("pair.json", {
            "A": {"elements": ["a"]}, "B": {"elements": ["p", "q"]},
            "f0": {"a": "p"}, "f1": {"a": "q"}}),
        "free_sig": write("free.json", {
            "name": "magma", "signature": {"symbols": [{"name": "m", "arity": 2}]}, "axioms": []}),
        "bad": write("bad.json", {"elements": "nope"}),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_free_bounded_on_a_point(files, capsys):
    code, out, _ = run(capsys, "free", "bounded-poset", files["one"])
    assert code == 0
    assert "exact: true" in out
    assert "  0 < x\n  x < 1" in out


def test_free_json_and_dot(files, capsys):
    code, out, _ = run(capsys, "free", "ordered-monoid", files["chain"], "--length", "2",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["exact"] is True
    assert len(doc["algebra"]["elements"]) == 7
    assert ["x0x0", "x0x1"] in doc["algebra"]["leq"]
    code, out, _ = run(capsys, "free", "bounded-poset", files["one"], "--format", "dot")
    assert out.startswith('digraph "free"') and out.count("->") == 2
    code, out, _ = run(capsys, "free", "bounded-poset", files["one"], "--format", "dot", "--closure")
    assert out.count("->") == 3


def test_free_without_axioms_is_the_term_poset(files, capsys):
    code, out, _ = run(capsys, "free", files["free_sig"], files["one"], "--depth", "2")
    assert code == 0
    assert "free algebra of magma" in out and "exact: true" in out
    assert "classes (5):" in out


def test_free_saturated_builtin(files, capsys):
    code, out, _ = run(capsys, "free", "ordered-monoid", files["one"], "--saturate", "--depth", "2")
    assert code == 0 and "classes (5):" in out and "  e  [2 terms]" in out


def test_check_verdicts(capsys):
    code, out, err = run(capsys, "check", "sf", "plus-star", "--bank-size", "2")
    assert code == 1
    assert "FAILS  -- x0+x1 < x0*x1 in TP" in out
    code, out, _ = run(capsys, "check", "lift", "word-pointwise", "--bank-size", "3")
    assert code == 0 and out.count("PASS") == 9
    code, out, _ = run(capsys, "check", "laws", "identity")
    assert code == 0 and "FAIL" not in out
    assert out.splitlines()[-1].startswith("natural")


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "sf", "ctx-partial", "--bank-size", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["schema"] == 1
    last = doc["reports"][-1]
    assert set(last) >= {"check", "monad", "poset", "verdict", "witness"}
    assert last["witness"] == "α(x0,x1) in TP is missing from the image of Tc"


def test_inconclusive_warns_and_passes(capsys):
    code, out, err = run(capsys, "check", "sf", "term", "--depth", "0", "--bank-size", "1")
    assert code == 0 and "INCONCLUSIVE" in out and "warning" in err


def test_duality_and_square(capsys):
    code, out, _ = run(capsys, "check", "duality", "word-pointwise")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "check", "sf", "square", "--bank-size", "2")
    assert code == 0 and out.count("PASS") == 4


def test_coinserter(files, capsys):
    code, out, _ = run(capsys, "coinserter", "--canonical", files["chain"])
    assert code == 0
    assert "coinserter (2):" in out and "  x0 < x1" in out
    code, out, _ = run(capsys, "coinserter", files["pair"], "--format", "json")
    doc = json.loads(out)
    assert doc["coinserter"]["leq"] == [["p", "q"]]
    assert doc["quotient"] == {"p": "p", "q": "q"}


def test_present(capsys):
    code, out, _ = run(capsys, "present", "identity", "2")
    doc = json.loads(out)
    assert code == 0
    assert [s["name"] for s in doc["signature"]["symbols"]] == ["1:0", "2:0", "2:1"]


def test_satisfies(files, capsys):
    code, out, _ = run(capsys, "satisfies", files["bounded2"], "leq 0 x0")
    assert code == 0 and out == "true\n"
    code, out, _ = run(capsys, "satisfies", files["bounded2"], "leq x0 0")
    assert code == 1 and out == "false  -- x0=1\n"


def test_dot(files, capsys):
    code, out, _ = run(capsys, "dot", files["chain"], "--name", "C")
    assert code == 0 and 'digraph "C"' in out and "n0 -> n1;" in out


@pytest.mark.parametrize("argv", [
    ["check", "laws", "nope"],
    ["free", "bounded-poset", "missing.json"],
    ["free", "nonexistent-variety", "missing.json"],
    ["satisfies", "missing.json", "leq 0 x0"],
    ["coinserter"],
])
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_files_exit_2(files, capsys):
    assert run(capsys, "dot", files["cycle"])[0] == 2
    assert run(capsys, "dot", files["bad"])[0] == 2
    assert run(capsys, "satisfies", files["bounded2"], "leq (0 x0) x0")[0] == 2
    assert run(capsys, "free", "ordered-monoid", files["one"], "--saturate",
               "--depth", "1", "--subst-depth", "2")[0] == 2
    assert run(capsys, "free", "ordered-monoid", files["one"], "--depth", "-1")[0] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["check", "everything", "term"])
    assert e.value.code == 2


def test_guard_exits_3(files, capsys):
    code, _, err = run(capsys, "free", "ordered-monoid", files["chain"], "--saturate",
                       "--depth", "3", "--guard-size", "1000")
    assert code == 3 and "guard" in err


def test_output_is_deterministic(files):
    cmd = [sys.executable, "-m", "ordalg", "free", "ordered-monoid", files["chain"], "--saturate"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
