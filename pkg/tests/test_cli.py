import json
import subprocess
import sys

from segcalc.cli import Status, main, run


def out(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExamples:
    def test_star(self, capsys, ctx5_file):
        assert out(capsys, "star", "--ctx", ctx5_file, "L[0,0]", "L[1,1]")[:2] == (0, "L[0,1]\n")

    def test_lfactor_expand(self, capsys, ctx5_file):
        code, text, _ = out(capsys, "lfactor", "--ctx", ctx5_file, "L[0,0]+L[1,1]", "L[0,0]", "--expand")
        assert code == 0
        assert text.splitlines() == ["(1 - 2*X)^-1 * (1 - X)^-1", "1 + 2X + 2X^2 (mod 5)"]

    def test_parse_error(self, capsys):
        code, text, err = out(capsys, "parse", "L[0,")
        assert code == 2 and text == ""
        assert err.startswith("PARSE_ERROR at column 5")

    def test_order(self, capsys, ctx5_file):
        assert out(capsys, "order", "--ctx", ctx5_file, "L[0,1]", "L[0,0]+L[1,1]")[1] == "true\n"
        assert out(capsys, "order", "--ctx", ctx5_file, "L[0,0]+L[1,1]", "L[0,1]")[1] == "false\n"

    def test_aperiodic_below(self, capsys):
        text = out(capsys, "aperiodic-below", "--n", "3", "L[0,0]+L[1,1]+L[2,2]")[1]
        assert text.splitlines() == ["L[0,0]+L[1,2]", "L[0,1]+L[2,2]", "L[1,1]+L[2,3]"]

    def test_genext(self, capsys, ctx5_file):
        assert out(capsys, "genext", "--ctx", ctx5_file, "--word", "L:0,L:1,L:2")[1] == "L[0,2]\n"

    def test_word_of(self, capsys):
        assert out(capsys, "word-of", "--n", "3", "L[0,0]+L[1,1]")[1] == "L:1,L:0\n"
        code, _, err = out(capsys, "word-of", "--n", "3", "L[0,0]+L[1,1]+L[2,2]")
        assert code == 3 and "not aperiodic" in err

    def test_serre_eq(self, capsys):
        assert out(capsys, "serre-eq", "--n", "3", "L:0,L:1,L:0", "L:0,L:0,L:1")[1] == "true\n"
        assert out(capsys, "serre-eq", "--n", "3", "L:0,L:1", "L:1,L:0")[1] == "false\n"
        args = ["serre-eq", "--n", "3", "L:0,L:0,L:2,L:1,L:0", "L:0,L:2,L:1,L:0,L:0"]
        assert out(capsys, *args)[1] == "true\n"
        assert out(capsys, *args, "--relations", "printed")[1] == "false\n"

    def test_divides(self, capsys, ctx5_file):
        assert out(capsys, "divides", "--ctx", ctx5_file, "--poly", "1,-1", "1,0,-1")[1] == "true\n"
        assert out(capsys, "divides", "--ctx", ctx5_file, "--poly", "1,-1", "1,-2")[1] == "false\n"
        args = ["divides", "--ctx", ctx5_file, "L[0,0]", "L[0,0]", "L[0,0]+L[1,1]", "L[0,0]"]
        assert out(capsys, *args)[1] == "true\n"

    def test_oracle_genext(self, capsys):
        code, text, _ = out(capsys, "oracle", "genext", "--n", "3", "--p", "101", "--seed", "7", "L[0,0]", "L[1,1]")
        assert (code, text) == (0, "L[0,1]\n")

    def test_oracle_check_order(self, capsys):
        code, text, err = out(capsys, "oracle", "check-order", "--n", "3", "--max-deg", "4")
        assert code == 0
        assert text.splitlines()[0] == "order-oracle: PASS (391 cases, 0 failures)"
        assert "o=3 deg=4" in err


class TestJson:
    def test_schema(self, capsys, ctx5_file):
        code, text, _ = out(capsys, "lfactor", "--ctx", ctx5_file, "L[0,0]+L[1,1]", "L[0,0]", "--expand", "--json")
        doc = json.loads(text)
        assert code == 0 and doc["schema"] == 1 and doc["status"] == "OK"
        assert doc["result"]["expanded"]["coefficients"] == [1, 2, 2]
        assert doc["result"]["factors"] == [{"value": 2, "f": 1}, {"value": 1, "f": 1}]

    def test_error_payload(self, capsys):
        code, text, _ = out(capsys, "parse", "L[0,", "--json")
        doc = json.loads(text)
        assert code == 2 and doc["status"] == "PARSE_ERROR"
        assert doc["diagnostics"][0]["column"] == 5

    def test_check_failed_payload(self, capsys, monkeypatch):
        from segcalc import checks

        def broken(**kwargs):
            res = checks.SuiteResult("roundtrips")
            res.record(res.row("always"), False, lambda: "the witness")
            return res

        monkeypatch.setitem(checks.SUITES, "roundtrips", broken)
        code, text, _ = out(capsys, "check", "roundtrips", "--json", "--quiet")
        doc = json.loads(text)
        assert code == 1 and doc["status"] == "CHECK_FAILED"
        assert doc["diagnostics"][0]["message"] == "always: the witness"


class TestErrors:
    def test_unknown_command(self):
        outcome, _, _ = run(["frobnicate"])
        assert outcome.status is Status.PRECONDITION_ERROR and outcome.exit_code == 3

    def test_missing_ctx_file(self, capsys, tmp_path):
        code, _, err = out(capsys, "parse", "--ctx", str(tmp_path / "none.json"), "L[0,0]")
        assert code == 3 and "cannot read context" in err

    def test_bad_ctx_json(self, capsys, tmp_path):
        path = tmp_path / "ctx.json"
        path.write_text("{not json")
        assert out(capsys, "parse", "--ctx", str(path), "L[0,0]")[0] == 2

    def test_bad_ctx_values(self, capsys, tmp_path):
        path = tmp_path / "ctx.json"
        path.write_text(json.dumps({"mode": "modular", "ell": 6, "q": 5}))
        code, _, err = out(capsys, "parse", "--ctx", str(path), "L[0,0]")
        assert code == 3 and "not prime" in err

    def test_unknown_line_with_ctx(self, capsys, ctx5_file):
        assert out(capsys, "parse", "--ctx", ctx5_file, "M[0,0]")[0] == 2

    def test_expand_needs_modular(self, capsys):
        assert out(capsys, "lfactor", "L[0,0]", "L[0,0]", "--expand")[0] == 3

    def test_unknown_suite(self, capsys):
        assert out(capsys, "check", "nope")[0] == 3


class TestCheck:
    def test_quick_suites(self, capsys):
        code, text, err = out(capsys, "check", "serre", "roundtrips", "--n", "2", "--max-deg", "4")
        assert code == 0
        assert text.splitlines()[0].startswith("serre: PASS")
        assert "roundtrips: PASS" in text
        assert "serre: image o=2" in err

    def test_stable_output(self, capsys):
        args = ["check", "lfactor-ratios", "--cases", "200", "--seed", "3", "--quiet"]
        first, second = out(capsys, *args)[1], out(capsys, *args)[1]
        assert first == second


def test_console_script_installed():
    res = subprocess.run([sys.executable, "-m", "segcalc.cli", "parse", "--n", "2", "L[3,4]"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "L[1,2]\n"
