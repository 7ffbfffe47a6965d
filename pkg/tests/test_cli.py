import io
import json

import pytest

from toggle.cli import run
from toggle.qbf import FIG8


def call(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def test_nimber_family():
    assert call(["nimber", "--family", "petersen", "--m", "6", "--k", "2", "--variant", "10"]) == (0, "0\n")
    assert call(["nimber", "--family", "lattice2", "--m", "5"]) == (0, "3\n")
    assert call(["nimber", "--family", "H", "--m", "5"]) == (0, "1\n")
    assert call(["nimber", "--family", "path", "--m", "2", "--format", "json-lines"]) == (0, '{"nimber": 1}\n')


def test_reduce_then_nimber(tmp_path):
    cnf = tmp_path / "fig8.cnf"
    cnf.write_text(FIG8)
    tg = tmp_path / "fig8.tg"
    code, text = call(["reduce", "--cnf", str(cnf), "--out", str(tg)])
    assert code == 0 and "vertices=56" in text
    code, text = call(["nimber", "--graph", str(tg)])
    assert code == 0 and int(text) > 0
    code, text = call(["qbf-check", "--cnf", str(cnf)])
    assert code == 0 and "holds" in text


def test_verify_four_equal():
    code, text = call(["verify", "--claim", "thm_four_equal", "--m-max", "9"])
    assert code == 0
    assert text.splitlines()[0].startswith("claim thm_four_equal: holds")
    assert len(text.splitlines()) == 1 + 5


def test_table_formats():
    code, text = call(["table", "--variant", "01", "--m-range", "6..7", "--k-range", "1..2", "--format", "csv"])
    assert code == 0
    assert text == "variant,m,k,nimber\nP01,6,1,0\nP01,6,2,0\nP01,7,1,0\nP01,7,2,0\n"
    code, text = call(["table", "--variant", "11", "--m-range", "5", "--k-range", "1", "--format", "json-lines"])
    assert json.loads(text) == {"variant": "P11", "m": 5, "k": 1, "nimber": 0}


def test_oeis_and_jl():
    assert call(["oeis-check", "--seq", "A071426", "--count", "101"])[0] == 0
    assert call(["oeis-check", "--seq", "A361517", "--count", "10"])[0] == 0
    assert call(["jl", "--m", "6"]) == (0, "0\n")


def test_oeis_mismatch(tmp_path):
    bad = tmp_path / "b.txt"
    bad.write_text("0 0\n1 1\n2 7\n")
    code, text = call(["oeis-check", "--seq", "A071426", "--bfile", str(bad), "--count", "3"])
    assert code == 1 and "index 2" in text


def test_replay(tmp_path):
    g = tmp_path / "p8.tg"
    g.write_text("toggle-graph 1\nn 8\n" + "".join(f"e {i} {i + 1}\n" for i in range(7)) + "w 11111011\n")
    code, text = call(["replay", "--graph", str(g), "--moves", "4,5,2"])
    assert code == 0
    assert "4" in text.splitlines()[-1].split("playable ")[1].split(",")
    code, text = call(["replay", "--graph", str(g), "--moves", "5"])
    assert code == 1 and "illegal" in text


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["nimber", "--family", "cycle", "--m", "2"],
    ["nimber"],
    ["nimber", "--graph", "/nonexistent/file"],
    ["table", "--variant", "01", "--m-range", "x", "--k-range", "1"],
    ["verify", "--claim", "thm_3k_even", "--k", "3"],
])
def test_input_errors_exit_2(argv):
    assert call(argv)[0] == 2


def test_budget_exit_3(monkeypatch):
    monkeypatch.setenv("TOGGLE_MEMO_LIMIT", "5")
    assert call(["nimber", "--family", "petersen", "--m", "8", "--k", "1", "--variant", "11"])[0] == 3
    assert call(["table", "--variant", "11", "--m-range", "8", "--k-range", "1"])[0] == 3


def test_jobs_do_not_change_output():
    argv = ["verify", "--claim", "thm_bounds", "--m-max", "8", "--format", "json-lines"]
    assert call(argv + ["--jobs", "1"]) == call(argv + ["--jobs", "3"])
