import json
import subprocess
import sys

import pytest

from steinberg.cli import run


def ok_json(argv):
    code, text = run(argv)
    assert code == 0, text
    rep = json.loads(text)
    assert rep["schema"] == "1" and rep["ok"] is True
    return rep


def test_building_tits():
    rep = ok_json(["building", "--q", "2", "--n", "3", "--model", "tits"])
    assert {"degree": 1, "rank": 8, "torsion": []} in rep["homology"]


def test_building_sigma_two_points():
    rep = ok_json(["building", "--q", "2", "--n", "1", "--model", "sigma_tits"])
    assert rep["homology"][0] == {"degree": 0, "rank": 1, "torsion": []}


@pytest.mark.parametrize("model", ["estar", "BJ", "J1", "J2", "X"])
def test_building_models_run(model):
    rep = ok_json(["building", "--q", "2", "--n", "2", "--model", model])
    assert rep["model"] == model


def test_building_XL_with_line():
    rep = ok_json(["building", "--q", "2", "--n", "2", "--model", "XL", "--line", "1,0"])
    assert rep["homology"][0]["rank"] == 1


def test_max_degree_caps_report():
    rep = ok_json(["building", "--q", "2", "--n", "3", "--model", "tits", "--max-degree", "0"])
    assert [h["degree"] for h in rep["homology"]] == [0]


def test_nonprime_q():
    code, text = run(["building", "--q", "4", "--n", "2"])
    assert code == 2 and "q must be prime" in text


def test_vertex_cap():
    code, _ = run(["building", "--q", "5", "--n", "5", "--model", "estar"])
    assert code == 2


def test_symbol_eval():
    rep = ok_json(["symbol", "eval", "--q", "2", "--n", "2", "--g", "1,0;0,1"])
    assert any(rep["modular"]) and not rep["zero"]
    rep = ok_json(["symbol", "eval", "--q", "2", "--n", "2", "--g", "1,0;1,0"])
    assert rep["zero"] and not any(rep["modular"])


def test_symbol_parse_error():
    code, _ = run(["symbol", "eval", "--q", "2", "--n", "2", "--g", "1,x;0,1"])
    assert code == 3
    code, _ = run(["symbol", "eval", "--q", "2", "--n", "2", "--g", "1,0"])
    assert code in (2, 3)


def test_symbol_check_relations():
    rep = ok_json(["symbol", "check-relations", "--q", "3", "--n", "2", "--trials", "100", "--seed", "7"])
    assert all(r["trials"] == r["passed"] == 100 for r in rep["relations"].values())


def test_symbol_compare():
    rep = ok_json(["symbol", "compare", "--q", "3", "--n", "2", "--g", "1,1;0,1"])
    assert rep["agree"] in (True, 1)


def test_d1_apply_four_terms():
    rep = ok_json(["d1", "apply", "--q", "2", "--n", "2", "--g", "1,0;0,1"])
    assert len(rep["terms"]) == 4
    assert sorted(t["coeff"] for t in rep["terms"]) == [-1, -1, 1, 1]


def test_d1_apply_dependent():
    rep = ok_json(["d1", "apply", "--q", "2", "--n", "2", "--g", "1,0;1,0"])
    assert rep["terms"] == []


def test_d1_square_zero():
    rep = ok_json(["d1", "square-zero", "--q", "2", "--n", "3", "--trials", "25", "--seed", "1"])
    assert rep["verdict"] == "PASS" and rep["passed"] == 25
    code, _ = run(["d1", "square-zero", "--q", "2", "--n", "2"])
    assert code == 2


def test_d1_oracle_check():
    rep = ok_json(["d1", "oracle-check", "--q", "3", "--n", "2", "--trials", "10", "--seed", "3"])
    assert rep["ok"]


def test_e1():
    rep = ok_json(["e1", "coinvariants", "--q", "2", "--n", "2"])
    assert (rep["rank"], rep["torsion"]) == (0, [])
    rep = ok_json(["e1", "coinvariants", "--q", "2", "--n", "1"])
    assert rep["rank"] == 1
    code, _ = run(["e1", "coinvariants", "--q", "5", "--n", "4"])
    assert code == 2


def test_compare_command():
    rep = ok_json(["compare", "--q", "2", "--n", "3", "--trials", "5", "--seed", "9"])
    assert rep["mv_isomorphism"] and rep["agree"] == rep["bases"]


def test_global_flags_before_subcommand():
    a = run(["--q", "3", "--n", "2", "e1", "coinvariants"])
    b = run(["e1", "coinvariants", "--q", "3", "--n", "2"])
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [
    ["symbol", "check-relations", "--q", "2", "--n", "3", "--trials", "5", "--seed", "123"],
    ["d1", "square-zero", "--q", "3", "--n", "3", "--trials", "4", "--seed", "0xdeadbeef"],
    ["compare", "--q", "2", "--n", "3", "--trials", "4", "--seed", "5"],
])
def test_deterministic_bytes(argv):
    assert run(argv) == run(argv)


def test_bad_seed_and_trials():
    code, _ = run(["d1", "square-zero", "--q", "2", "--n", "3", "--seed", "-1"])
    assert code == 2
    code, _ = run(["d1", "square-zero", "--q", "2", "--n", "3", "--trials", "-3"])
    assert code == 2


def test_text_output():
    code, text = run(["e1", "coinvariants", "--q", "2", "--n", "2", "--out", "text"])
    assert code == 0
    assert "rank" in text and not text.lstrip().startswith("{")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "steinberg", "building", "--q", "2", "--n", "2"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert json.loads(res.stdout)["homology"][0]["rank"] == 2
    bad = subprocess.run([sys.executable, "-m", "steinberg", "building", "--q", "4"],
                         capture_output=True, text=True, timeout=120)
    assert bad.returncode == 2 and "q must be prime" in bad.stderr
