import io
import json
import subprocess
import sys

import pytest

from levylab.cli import run_cli


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin)))
    code = run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_wo_reals(capsys):
    assert run(["classify", "corpus:wo-reals"], capsys)[:2] == (0, "Sigma2\n")


def test_transfer_wo_reals_is_data_not_failure(capsys):
    code, out, _ = run(["transfer", "corpus:wo-reals"], capsys)
    assert code == 0
    assert out.startswith("NotApplicable: leading quantifier is existential")
    assert run(["transfer", "corpus:wo-reals", "--expect", "eliminable"], capsys)[0] == 1
    assert run(["transfer", "corpus:wo-reals", "--expect", "not-applicable"], capsys)[0] == 0


def test_corpus_check(capsys):
    code, out, _ = run(["corpus", "check"], capsys)
    assert code == 0
    assert out.rstrip().endswith("entries match")
    assert "FAIL" not in out


def test_corpus_list_and_show(capsys):
    code, out, _ = run(["corpus", "list"], capsys)
    assert code == 0 and "magidor-skeleton" in out
    code, out, _ = run(["--json", "corpus", "show", "edm"], capsys)
    doc = json.loads(out)
    assert doc["results"]["expected_class"] == "Pi2"
    assert run(["corpus", "show"], capsys)[0] == 2
    assert run(["corpus", "show", "missing"], capsys)[0] == 2


def test_parse_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    src = tmp_path / "f.lvy"
    src.write_text("existsOrd x . not (forall y in x . y = y)\n")
    assert run(["parse", str(src), "--nnf"], capsys)[1] == "existsOrd x . exists y in x . not y = y\n"
    assert run(["parse", str(src), "--desugar"], capsys)[1] == \
        "exists x . OrdTupleSet(x) and not forall y in x . y = y\n"
    code, out, _ = run(["parse", "-"], capsys, b"a in b", monkeypatch)
    assert (code, out) == (0, "a in b\n")


def test_parse_prenex(capsys):
    code, out, _ = run(["parse", "corpus:wo-reals", "--prenex"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("existsOrd alpha . existsOrd f . forallOrd x .")
    assert out.splitlines()[1] == "blocks: exists{alpha,f} forall{x}"


def test_input_errors(tmp_path, capsys, monkeypatch):
    code, _, err = run(["parse", "-"], capsys, b"exists x .", monkeypatch)
    assert code == 2 and "end of input" in err
    assert run(["parse", str(tmp_path / "missing.lvy")], capsys)[0] == 2
    bad = tmp_path / "bad.lvy"
    bad.write_bytes(b"\xff\xfe x")
    assert run(["parse", str(bad)], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["eval", "corpus:pairing", "--model", "v9"], capsys)[0] == 2
    assert run(["eval", "corpus:pairing", "--model", "w2"], capsys)[0] == 2
    assert run(["eval", "corpus:ordinal-param", "--model", "v3", "--assign", "a=x"], capsys)[0] == 2
    assert run(["eval", "corpus:ordinal-param", "--model", "v3"], capsys)[0] == 2
    assert run(["suite", "--budget", "0"], capsys)[0] == 2
    assert run(["transfer", "corpus:wo-reals", "--params", "x:real"], capsys)[0] == 2


def test_eval(capsys):
    assert run(["eval", "corpus:ordinal-param", "--model", "v3", "--assign", "a=3"], capsys)[:2] == (0, "true\n")
    assert run(["eval", "corpus:pairing", "--model", "v3"], capsys)[1] == "false\n"


def test_transfer_params_and_trace(tmp_path, capsys):
    src = tmp_path / "k.lvy"
    src.write_text("forallOrd x . x in kappa\n")
    assert run(["transfer", str(src)], capsys)[0] == 2  # kappa undeclared
    code, out, _ = run(["transfer", str(src), "--params", "kappa", "--trace", "--expect", "eliminable"], capsys)
    assert code == 0 and "rule:sigma1 at root" in out


def test_classify_options(capsys):
    code, out, _ = run(["classify", "corpus:delta2-join", "--delta", "--trace"], capsys)
    assert code == 0 and out.splitlines()[0] == "Delta2"
    assert "[and-join]" in out
    code, out, _ = run(["--json", "classify", "corpus:magidor-skeleton", "--rules", "minimal"], capsys)
    doc = json.loads(out)
    assert doc["results"] == {"class": "Pi3", "ordinal_bounded_only": True}


def test_custom_registry(tmp_path, capsys):
    reg = tmp_path / "reg.txt"
    reg.write_text("Big/1 class=Sigma3\n")
    src = tmp_path / "f.lvy"
    src.write_text("forall x . Big(x)\n")
    assert run(["--registry", str(reg), "classify", str(src)], capsys)[1] == "Pi4\n"
    reg.write_text("Big/1 class=Sigma3 sideways\n")
    assert run(["--registry", str(reg), "classify", str(src)], capsys)[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["--json", "transfer", "corpus:magidor-skeleton", "--trace"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    doc = json.loads(first)
    assert set(doc) == {"tool", "version", "schema_version", "command", "inputs", "results", "traces"}
    assert doc["results"]["outcome"] == "Eliminable"


def test_suite_with_figures(tmp_path, capsys):
    argv = ["--json", "suite", "--universe", "v3", "--budget", "20", "--figures", str(tmp_path)]
    code, out, _ = run(argv, capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["violations"] == []
    png = tmp_path / "suite_verdicts.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert run(argv, capsys)[1] == out


def test_corpus_check_figure(tmp_path, capsys):
    code, out, _ = run(["corpus", "check", "--figures", str(tmp_path / "figs")], capsys)
    assert code == 0
    assert (tmp_path / "figs" / "corpus_classes.png").stat().st_size > 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "levylab", "classify", "corpus:magidor-skeleton"],
                          capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, "Pi3\n")


@pytest.mark.parametrize("argv", [["--help"], ["--version"]])
def test_help_exits_zero(argv, capsys):
    assert run_cli(argv) == 0
