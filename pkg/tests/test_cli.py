import json

import pytest

from redei.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_symbol_worked_example(capsys):
    code, out, _ = run(capsys, "symbol", "-20", "41", "5")
    assert code == 0
    assert out.strip() == "-1"


def test_symbol_trivial(capsys):
    code, out, _ = run(capsys, "symbol", "1", "7", "11")
    assert code == 0
    assert out.strip() == "+1"


def test_symbol_invalid_exit_2(capsys):
    code, out, err = run(capsys, "symbol", "-1", "-1", "3")
    assert code == 2
    assert "infinity" in err


def test_symbol_degenerate_exit_3(capsys):
    # 45 reduces to 5, and (5, 5, 11) passes the Hilbert conditions
    code, _, err = run(capsys, "symbol", "5", "45", "11")
    assert code == 3


def test_symbol_trace_json(capsys):
    code, out, _ = run(capsys, "symbol", "-20", "41", "5", "--trace", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == 1
    assert rec["result"] == -1
    assert rec["canonical"] == {"a": -5, "b": 41, "c": 5}
    assert rec["trace"]["parts"] == {"5": -1}
    assert rec["trace"]["twist"] == 2


def test_json_deterministic(capsys):
    _, out1, _ = run(capsys, "symbol", "-20", "41", "5", "--trace", "--json")
    _, out2, _ = run(capsys, "symbol", "-20", "41", "5", "--trace", "--json")
    assert out1 == out2


def test_ranks(capsys):
    code, out, _ = run(capsys, "ranks", "-205", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["result"] == {"r2": 2, "r4": 1, "r8": 0}
    assert rec["canonical"]["D"] == -820
    code, out, _ = run(capsys, "ranks", "-1", "--json")
    assert json.loads(out)["result"] == {"r2": 0, "r4": 0, "r8": 0}


def test_ranks_oracle(capsys):
    code, out, _ = run(capsys, "ranks", "-17", "--oracle", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["oracle"]["match"] is True


def test_ranks_factor_limit_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("REDEI_FACTOR_BOUND", "100")
    code, _, err = run(capsys, "ranks", str(1009 * 1013))
    assert code == 4
    assert "factorization limit" in err


def test_verify_product_formula(capsys):
    code, out, _ = run(capsys, "verify", "product-formula", "--max", "200", "--seed", "7", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["result"] == "ok"
    assert rec["checked"] == 200


def test_verify_reciprocity_small(capsys):
    code, out, _ = run(capsys, "verify", "reciprocity", "--max", "12", "--json")
    assert code == 0
    assert json.loads(out)["result"] == "ok"


def test_verify_oracle_small(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--max", "400", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["result"] == "ok"


def test_verify_jobs_match(capsys):
    _, out1, _ = run(capsys, "verify", "oracle", "--max", "200", "--json")
    _, out2, _ = run(capsys, "verify", "oracle", "--max", "200", "--jobs", "2", "--json")
    assert out1 == out2


def test_verify_twist_independence_small(capsys):
    code, out, _ = run(capsys, "verify", "twist-independence", "--max", "5", "--seed", "3", "--json")
    assert code == 0
    assert json.loads(out)["result"] == "ok"


def test_verify_governing_small(capsys):
    code, out, _ = run(capsys, "verify", "governing", "--max", "300", "--json")
    assert code == 0
    assert json.loads(out)["result"] == "ok"
