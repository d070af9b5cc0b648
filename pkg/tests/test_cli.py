import json

import pytest

from dsseq.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_z_json(capsys):
    code, out, _ = run_cli(capsys, "generate", "z", "--d", "1", "--m", "3")
    assert code == 0
    obj = json.loads(out)
    assert obj["blocks"] == [[0, 1, 2], [2, 1, 0], [0, 1, 2]]
    assert obj["special"] == [0, 2]


def test_generate_text_rendering(capsys):
    code, out, _ = run_cli(capsys, "generate", "z", "--d", "1", "--m", "3", "--text")
    assert code == 0
    assert out.strip() == "[0 1 2] | (2 1 0) | [0 1 2]"


def test_generate_verify_roundtrip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "generate", "z", "--d", "2", "--m", "2")
    path = tmp_path / "z.json"
    path.write_text(out)
    code, out, _ = run_cli(capsys, "verify", "--file", str(path),
                           "--props", "ds=3,multiplicity=5,z=2:2,distinct-blocks")
    assert code == 0
    results = json.loads(out)
    assert all(r["ok"] for r in results)


def test_generate_even_verify_roundtrip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "generate", "even", "--s", "4", "--k", "1",
                           "--m", "3")
    path = tmp_path / "e.json"
    path.write_text(out)
    code, out, _ = run_cli(capsys, "verify", "--file", str(path),
                           "--props", "even=4:1:3,ds=4,sparse=2,multiplicity=2")
    assert code == 0


def test_verify_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"blocks": [[0, 1, 0]], "special": []}))
    code, out, _ = run_cli(capsys, "verify", "--file", str(path),
                           "--props", "ds=1")
    assert code == 1
    assert not json.loads(out)[0]["ok"]


def test_stats(capsys):
    code, out, _ = run_cli(capsys, "stats", "z", "--d", "2", "--m", "5")
    assert code == 0
    obj = json.loads(out)
    assert obj["S"] == 32 and obj["M"] == 127
    code, out, _ = run_cli(capsys, "stats", "even", "--s", "4", "--k", "3",
                           "--m", "1")
    assert json.loads(out)["mu"] == 8


def test_ackermann_eval(capsys):
    code, out, _ = run_cli(capsys, "ackermann", "eval", "--n", "4")
    assert code == 0 and json.loads(out)["value"] == 65536
    code, out, _ = run_cli(capsys, "ackermann", "eval", "--n", "10",
                           "--level", "2")
    assert json.loads(out)["value"] == 1024
    code, out, _ = run_cli(capsys, "ackermann", "alpha", "--x", "65536")
    assert json.loads(out)["value"] == 4
    code, out, _ = run_cli(capsys, "ackermann", "alpha", "--x", "1024",
                           "--level", "2")
    assert json.loads(out)["value"] == 10


def test_ackermann_budget_exit(capsys):
    code, out, _ = run_cli(capsys, "ackermann", "eval", "--n", "5")
    assert code == 3
    assert json.loads(out)["tower"]["top"] == 65536


def test_oracle_with_cache(tmp_path, capsys):
    cache = str(tmp_path / "c.jsonl")
    code, out1, _ = run_cli(capsys, "oracle", "lambda", "--s", "2", "--n", "5",
                            "--cache", cache)
    assert code == 0
    code, out2, _ = run_cli(capsys, "oracle", "lambda", "--s", "2", "--n", "5",
                            "--cache", cache)
    assert json.loads(out1) == json.loads(out2)
    assert json.loads(out1)["value"] == 9


def test_oracle_ex_pattern(capsys):
    code, out, _ = run_cli(capsys, "oracle", "ex", "--pattern", "abab",
                           "--n", "3")
    assert code == 0 and json.loads(out)["value"] == 5


def test_constants(capsys):
    code, out, _ = run_cli(capsys, "constants", "pq", "--s", "3", "--k", "2")
    assert json.loads(out) == {"s": 3, "k": 2, "P": 10, "Q": 10}
    code, out, _ = run_cli(capsys, "constants", "r", "--s", "4", "--d", "3")
    assert json.loads(out)["R"] == 25
    code, out, _ = run_cli(capsys, "constants", "m0", "--s", "3")
    assert json.loads(out)["m0"] == 10
    code, out, _ = run_cli(capsys, "constants", "growth", "--family", "R",
                           "--s", "4", "--start", "3", "--stop", "8")
    assert len(json.loads(out)["rows"]) == 6


def test_formations_cli(capsys):
    code, out, _ = run_cli(capsys, "formations", "check", "--seq", "abab",
                           "--r", "2", "--s", "4")
    assert code == 0 and json.loads(out)["formation_free"]
    code, out, _ = run_cli(capsys, "formations", "check", "--seq", "abab",
                           "--r", "2", "--s", "2")
    assert code == 1
    code, out, _ = run_cli(capsys, "formations", "embed", "--pattern", "aab",
                           "--formation", "12;21")
    assert code == 0
    assert json.loads(out)["sigma"] == {"1": 2, "2": 1}


def test_usage_error_exit_code(capsys, tmp_path):
    code, _, err = run_cli(capsys, "verify", "--file",
                           str(tmp_path / "missing.json"), "--props", "ds=3")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["generate", "z", "--d", "1"])  # missing --m
    assert e.value.code == 2


def test_zinterp(capsys):
    code, out, _ = run_cli(capsys, "generate", "zinterp", "--n", "8")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["blocks"]) == 1
