import csv
import io
import json

import pytest

from ordlab.cli import int_list, main
from ordlab.fundseq import FUEL_ENV


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_int_list():
    assert int_list("1,4..6") == [1, 4, 5, 6]
    assert int_list("") == []


class TestOrd:
    def test_compare(self, capsys):
        assert run(capsys, "ord", "cmp", "w^w", "phi(1,0)")[:2] == (0, "LT\n")

    def test_norm_and_code(self, capsys):
        assert run(capsys, "ord", "norm", "w + 1")[1].strip() == "3"
        assert run(capsys, "ord", "code", "w")[1].strip() == "4"

    def test_syntax_error_is_usage(self, capsys):
        rc, _, err = run(capsys, "ord", "fmt", "w^^")
        assert rc == 2 and err.startswith("ordlab:")


def test_fund_csv(capsys):
    rc, out, _ = run(capsys, "fund", "w^2", "--n", "2..3")
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["n", "value"], ["2", "w*2"], ["3", "w*3"]]


def test_fund_along_set(capsys):
    rows = list(csv.reader(io.StringIO(run(capsys, "fund", "w", "--set", "2,3,4")[1])))
    assert rows[1:] == [["0", "2", "2"], ["1", "3", "1"], ["2", "4", "0"]]


class TestLarge:
    def test_check(self, capsys):
        assert run(capsys, "large", "check", "--alpha", "w", "--set", "1,2")[1] == "exact\n"
        assert run(capsys, "large", "check", "--alpha", "w", "--set", "3,4")[1] == "small\n"

    def test_enumerate(self, capsys):
        out = run(capsys, "large", "enumerate", "--alpha", "w", "--ground", "1,2,3")[1]
        assert out.split() == ["1,2", "1,3"]

    def test_scatter(self, capsys):
        out = run(capsys, "large", "scatter", "--alpha", "w", "--ground", "40")[1]
        assert [r[1] for r in csv.reader(io.StringIO(out))][1:4] == ["1", "11", "31"]

    def test_bad_set(self, capsys):
        assert run(capsys, "large", "check", "--alpha", "w", "--set", "3,2")[0] == 2


def test_peel_json(capsys):
    rc, out, _ = run(capsys, "peel", "--alpha", "1", "--order", "rev",
                     "--tuple", "c(5); c(3)", "--index", "w")
    rep = json.loads(out)
    assert rc == 0 and rep["peel"] == ["0", "x(3)"] and rep["zeta"] == "0" and rep["color"] == 3


def test_wop_demo(capsys):
    rc, out, _ = run(capsys, "wop-demo", "--window", "40")
    rows = list(csv.reader(io.StringIO(out)))
    assert rc == 0 and rows[0] == ["i", "h", "x"]
    xs = [int(r[2]) for r in rows[1:]]
    assert len(xs) >= 5 and xs == sorted(set(xs))


class TestJump:
    def test_run(self, capsys):
        rep = json.loads(run(capsys, "jump", "run", "947", "--x", "5", "--m", "100")[1])
        assert rep["outcome"] == "Halted" and rep["steps"] == 12 and rep["bound"] == 13

    def test_decode(self, capsys):
        assert run(capsys, "jump", "decode", "947")[1] == "DECJZ r1, 2\nDECJZ r0, 0\n"

    def test_pair(self, capsys):
        assert run(capsys, "jump", "pair", "0", "--alpha", "0")[1] == "5\n"

    def test_asm_file(self, capsys, tmp_path):
        f = tmp_path / "p.asm"
        f.write_text("INC r0\nINC r0\nHALT\n")
        rep = json.loads(run(capsys, "jump", "run", "--asm", str(f))[1])
        assert rep["output"] == 2

    def test_tj(self, capsys):
        out = run(capsys, "jump", "tj", "--window", "0..3", "--fuel", "40", "--cap", "100")[1]
        assert [r[0] for r in csv.reader(io.StringIO(out))][1:] == ["5", "9", "14", "20"]

    def test_missing_program(self, capsys):
        assert run(capsys, "jump", "run")[0] == 2

    def test_bad_oracle(self, capsys):
        assert run(capsys, "jump", "run", "1", "--oracle", "odd")[0] == 2


class TestSolve:
    def test_ok(self, capsys):
        rc, out, _ = run(capsys, "solve", "--alpha", "w", "--coloring", "const", "--window", "10",
                         "--target-len", "5")
        rep = json.loads(out)
        assert rc == 0 and rep["H"] == list(range(1, 11))

    def test_budget_exhaustion(self, capsys):
        assert run(capsys, "solve", "--alpha", "w", "--coloring", "mix:1", "--budget", "20")[0] == 3

    def test_short_is_failure(self, capsys):
        rc, out, _ = run(capsys, "solve", "--alpha", "w", "--coloring", "mix:3", "--window", "20",
                         "--target-len", "19")
        assert rc == 1 and json.loads(out)["status"] == "short"


class TestSuiteCommand:
    def test_list(self, capsys):
        out = run(capsys, "suite", "list")[1]
        assert "goodnorm" in out and len(out.splitlines()) == 12

    def test_run_reproducible(self, capsys):
        argv = ("suite", "run", "nestedness", "--max", "w^3", "--n", "4", "--seed", "7", "--no-timing")
        a = run(capsys, *argv)
        b = run(capsys, *argv)
        assert a[0] == 0 and a[1] == b[1]
        rep = json.loads(a[1])
        assert rep["failures"] == [] and "millis" not in rep and rep["params"]["seed"] == 7

    def test_param(self, capsys):
        rep = json.loads(run(capsys, "suite", "run", "omega-largeness", "--param", "top=6")[1])
        assert rep["params"]["top"] == 6 and isinstance(rep["millis"], int)

    def test_errors(self, capsys):
        assert run(capsys, "suite", "run", "nope")[0] == 2
        assert run(capsys, "suite", "run")[0] == 2
        assert run(capsys, "suite", "run", "omega-largeness", "--param", "top")[0] == 2


class TestFuel:
    def test_flag(self, capsys):
        assert run(capsys, "--fuel", "3", "ord", "norm", "w^w^w")[0] == 3

    def test_env(self, capsys, monkeypatch):
        monkeypatch.setenv(FUEL_ENV, "3")
        assert run(capsys, "ord", "norm", "w^w^w")[0] == 3

    def test_nonpositive(self, capsys):
        assert run(capsys, "--fuel", "0", "ord", "norm", "w")[0] == 2


class TestConfig:
    def test_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "ordlab.json"
        cfg.write_text(json.dumps({"fund": {"n": "7"}}))
        out = run(capsys, "--config", str(cfg), "fund", "w")[1]
        assert out.splitlines()[1:] == ["7,7"]
        out = run(capsys, "--config", str(cfg), "fund", "w", "--n", "2")[1]
        assert out.splitlines()[1:] == ["2,2"]

    def test_fuel_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text('{"fuel": 3}')
        assert run(capsys, "--config", str(cfg), "ord", "norm", "w^w^w")[0] == 3

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text("[1, 2]")
        assert run(capsys, "--config", str(cfg), "ord", "fmt", "w")[0] == 2
        assert run(capsys, "--config", str(tmp_path / "missing.json"), "ord", "fmt", "w")[0] == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
