import csv
import io
import json
import shutil
import subprocess

import pytest

from kabelian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eq_exit_codes(capsys):
    code, out, _ = run(capsys, "eq", "010110", "011010", "--k", "3")
    assert code == 0
    assert json.loads(out) == {"u": "010110", "v": "011010", "k": 3,
                               "equivalent": True, "witness_x": None}
    code, out, _ = run(capsys, "eq", "010110", "011010", "--k", "4")
    assert code == 1 and json.loads(out)["witness_x"] == "0101"
    code, out, _ = run(capsys, "eq", "0101", "0101", "--k", "inf")
    assert code == 0


def test_eq_reads_files_and_separators(capsys, tmp_path):
    f = tmp_path / "words.txt"
    f.write_text("010110\n011010\n")
    assert run(capsys, "eq", "--file", str(f), "--k", "3")[0] == 0
    code, out, _ = run(capsys, "eq", "ab,c,ab", "ab,ab,c", "--sep", ",", "--k", "1")
    assert code == 0


def test_errors_exit_2(capsys):
    code, _, err = run(capsys, "eq", "0101", "--k", "2")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "eq", "01", "10", "--k", "0")[0] == 2
    assert run(capsys, "complexity", "--word", "mech:5/3", "--k", "2", "--n-max", "4")[0] == 2
    assert run(capsys, "census", "--m", "2", "--k", "2", "--n-range", "1..30",
               "--method", "bruteforce", "--budget", "100")[0] == 2
    assert run(capsys, "eq", "abc", "ab", "--alphabet", "ab", "--k", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["census", "--m", "2", "--k", "2", "--n-range", "5"])
    assert exc.value.code == 2


def test_sig(capsys):
    code, out, _ = run(capsys, "sig", "010110", "--k", "3")
    sig = json.loads(out)["signature"]
    assert code == 0 and sig["prefix"] == "01"


def test_census_csv(capsys, tmp_path):
    target = tmp_path / "census.csv"
    code, _, _ = run(capsys, "census", "--m", "2", "--k", "2", "--n-range", "2..6",
                     "--method", "both", "--out", str(target))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert list(rows[0]) == ["m", "k", "n", "count", "method"]
    assert {(r["n"], r["count"]) for r in rows if r["n"] == "4"} == {("4", "14")}


def test_census_is_deterministic(capsys):
    argv = ["census", "--m", "3", "--k", "2", "--n-range", "1..6", "--format", "csv"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv, "--workers", "2")[1]
    assert first == second


def test_complexity_and_alarm(capsys):
    code, out, _ = run(capsys, "complexity", "--word", "up:U=,V=01", "--k", "2", "--n-max", "6")
    data = json.loads(out)
    assert code == 0 and data["alarm"] == 2
    code, out, _ = run(capsys, "complexity", "--word", "fib", "--k", "2", "--n-max", "6",
                       "--plot-data")
    assert out.splitlines() == ["1 2", "2 3", "3 4", "4 4", "5 4", "6 4"]


def test_sturmian_commands(capsys):
    code, out, _ = run(capsys, "sturmian", "chain", "--word", "fib", "--n", "6")
    assert code == 0 and json.loads(out)["sigma"] == [5, 2, 4, 1, 6, 3]
    code, out, _ = run(capsys, "sturmian", "check", "--word", "fib", "--k-max", "3", "--n-max", "20")
    assert code == 0 and json.loads(out)["ok"]
    assert run(capsys, "sturmian", "check", "--word", "tm", "--n-max", "10")[0] == 1
    code, out, _ = run(capsys, "sturmian", "special", "--word", "fib", "--n", "5")
    assert json.loads(out)["left_special"] == ["01001"]


def test_pairs_power_balance(capsys):
    code, out, _ = run(capsys, "pairs2k", "--k", "2")
    assert [p["x"] for p in json.loads(out)["pairs"]] == ["0", "1"]
    code, out, _ = run(capsys, "power", "--word", "fib", "--k", "2", "--N", "3")
    assert code == 0 and json.loads(out)["witness"]["N"] == 3
    code, _, _ = run(capsys, "power", "--word", "fib", "--k", "inf", "--N", "4",
                     "--lmax", "40", "--window", "500")
    assert code == 1
    code, out, _ = run(capsys, "balance", "--word", "fib", "--k", "1", "--window", "500")
    assert code == 0 and json.loads(out)["B"] == 1


@pytest.mark.skipif(shutil.which("kabelian") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["kabelian", "eq", "0110", "1101", "--k", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
