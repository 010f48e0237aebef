import json

import pytest

from teamlogic.cli import main
from teamlogic.modal import gap_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_true_and_false(capsys):
    team = '[{"p":1,"q":0},{"p":0,"q":1}]'
    code, out, _ = run(capsys, "eval", "--domain", "p,q", "--formula", r"p \/ q", "--team", team)
    assert code == 0 and json.loads(out) == {"sat": True}
    code, out, _ = run(capsys, "eval", "--domain", "p,q", "--formula", r"p \\/ q", "--team", team)
    assert code == 1 and json.loads(out) == {"sat": False}


def test_eval_team_from_file(tmp_path, capsys):
    f = tmp_path / "team.json"
    f.write_text('[{"p": 1}]')
    code, out, _ = run(capsys, "eval", "--domain", "p", "--formula", "p", "--team", str(f))
    assert code == 0


def test_eval_on_model(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(gap_model().to_json()))
    args = ["eval", "--model", str(path), "--formula", r"gdia (=(p) /\ might r)"]
    assert run(capsys, *args, "--team", '["w_npr"]')[0] == 0
    assert run(capsys, *args, "--team", '["w_pnr", "w_npr"]')[0] == 1


def test_fragment_violation_exits_2(capsys):
    code, out, err = run(capsys, "eval", "--domain", "p", "--formula", "=(p)", "--team", "[]", "--fragment", "PL_NE")
    assert code == 2 and out == ""
    assert "=(p)" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--domain", "p", "--formula", "p /\\", "--team", "[]"],
        ["eval", "--domain", "p", "--formula", "q", "--team", "[]"],
        ["eval", "--formula", "p", "--team", "[]"],
        ["eval", "--domain", "p", "--formula", "p", "--team", "{bad"],
        ["synth", "--domain", "p", "--logic", "NOPE", "--property", "[]"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err


def test_extension(capsys):
    code, out, _ = run(capsys, "extension", "--domain", "p", "--formula", "p")
    assert code == 0
    assert json.loads(out) == {"formula": "p", "size": 2, "extension": [[], [{"p": 1}]]}


def test_closure_with_class(capsys):
    code, out, _ = run(capsys, "closure", "--domain", "p,q", "--formula", "might p /\\ might ~p", "--class", "C")
    data = json.loads(out)
    assert code == 0 and data["convex"] and data["member"]
    assert data["downward"] is False and data["downward_witness"] is not None
    code, out, _ = run(capsys, "closure", "--domain", "p,q", "--formula", r"p \\/ might q", "--class", "C")
    assert code == 1 and json.loads(out)["convex_witness"] is not None


def test_entails_witness(capsys):
    code, out, _ = run(capsys, "entails", "--domain", "q,r", "--premise", r"might top /\ (q \/ r)",
                       "--formula", r"(might top /\ q) \/ (might top /\ r)")
    data = json.loads(out)
    assert code == 1 and data["entails"] is False
    assert data["witness"] == [{"q": 1, "r": 0}]


def test_synth_round_trip(capsys):
    prop = '[[{"p":1}], [{"p":1},{"p":0}]]'
    code, out, _ = run(capsys, "synth", "--domain", "p", "--logic", "PLIM", "--property", prop)
    data = json.loads(out)
    assert code == 0 and data["verified"]
    code, out, _ = run(capsys, "eval", "--domain", "p", "--formula", data["formula"], "--team", '[{"p":0}]')
    assert code == 1


def test_synth_rejects_out_of_class(capsys):
    prop = '[[], [{"p":1},{"p":0}]]'
    code, out, _ = run(capsys, "synth", "--domain", "p", "--logic", "CONDEP", "--property", prop)
    assert code == 1 and "error" in json.loads(out)


def test_verify_jsonl_and_output(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--domain", "p", "--logic", "PLIM", "--output", str(dest))
    assert code == 0 and out == ""
    data = json.loads(dest.read_text())
    assert data["ok"] and data["total"] == 13
    code, out, _ = run(capsys, "verify", "--domain", "p", "--logic", "PLIM", "--format", "jsonl")
    assert code == 0 and out == ""  # no failure records


def test_verify_seed_from_environment(monkeypatch, capsys):
    args = ["verify", "--domain", "p,q", "--logic", "CONINQ", "--mode", "sample", "--k", "20"]
    monkeypatch.setenv("TLW_SEED", "7")
    a = run(capsys, *args)[1]
    b = run(capsys, *args, "--seed", "7")[1]
    assert a == b and json.loads(a)["seed"] == 7
    monkeypatch.setenv("TLW_SEED", "x")
    assert run(capsys, *args)[0] == 2


def test_unidef(capsys):
    code, out, _ = run(capsys, "unidef", "--domain", "p,q", "--context", r"_1 \/. _2", "--op", "or", "--class", "DE")
    assert code == 0 and json.loads(out)["uniform"]
    code, out, _ = run(capsys, "unidef", "--domain", "p", "--context", r"_1 \/. _2", "--op", "or", "--class", "C")
    data = json.loads(out)
    assert code == 1 and len(data["witness"]) == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--domain", "p", "--op", "or", "--class", "DE", "--depth", "2",
                       "--fragment", "CONDEP")
    assert code == 0 and json.loads(out)["context"] == r"_1 \/. _2"


def test_counterexamples_suite(capsys):
    code, out, _ = run(capsys, "counterexamples", "--format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows and all(r["passed"] for r in rows)
    assert run(capsys, "counterexamples", "--suite", "nope")[0] == 2


def test_output_is_byte_stable(capsys):
    args = ["closure", "--domain", "p,q", "--formula", r"p \\/ might q"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]
