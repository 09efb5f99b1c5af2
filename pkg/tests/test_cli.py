import json
import subprocess
import sys

import pytest

from spinmcg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_eval_alpha_fourth(capsys):
    code, out = run(capsys, "eval", "aaaa")
    assert code == 0
    assert "identity: True" in out.out


def test_eval_empty_word(capsys):
    code, out = run(capsys, "eval", "", "--format", "structured")
    doc = json.loads(out.out)
    assert code == 0 and doc["identity"] is True
    assert doc["state"]["odd_edges"] == [] and doc["state"]["flipped_patch"] == []


def test_eval_with_explicit_rule(capsys):
    code, out = run(capsys, "eval", "t", "--rule", "cd:ac/cb")
    assert code == 0 and "identity: False" in out.out


def test_enumerate_degeneracy(capsys):
    code, out = run(capsys, "enumerate", "--family", "degeneracy", "--format", "structured")
    doc = json.loads(out.out)
    assert code == 0
    assert doc["solutions"] == 128 and doc["rank"] == 3


def test_enumerate_needs_family(capsys):
    code, out = run(capsys, "enumerate")
    assert code == 2 and "usage" in out.err


def test_parse_error_exit_code(capsys):
    code, out = run(capsys, "eval", "a^(")
    assert code == 2
    assert "bad word" in out.err


def test_bad_rule_exit_code(capsys):
    code, _ = run(capsys, "eval", "a", "--rule", "zz")
    assert code == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_check_single_family(capsys):
    code, out = run(capsys, "check-relations", "--family", "first-commutator")
    assert code == 0 and "PASS first-commutator" in out.out


def test_check_failure_exit_code(capsys):
    code, out = run(capsys, "check-relations", "--family", "pentagon")
    assert code == 1 and "FAIL pentagon" in out.out


def test_char_map(capsys):
    code, out = run(capsys, "char-map", "b", "--format", "structured")
    doc = json.loads(out.out)
    assert code == 0 and doc["valid"] and len(doc["pieces"]) == 1
    code, _ = run(capsys, "char-map", "t")
    assert code == 2


def test_export_structured_is_one_document(capsys):
    code, out = run(capsys, "export", "--model", "ppsl", "--format", "structured")
    assert code == 0
    assert len(json.loads(out.out)["relators"]) == 5


def test_synth_rule_skip(capsys):
    code, out = run(capsys, "synth-rule", "--skip", "pentagon")
    assert code == 0 and "4 class(es)" in out.out
    code, out = run(capsys, "synth-rule")
    assert code == 1 and "no consistent rule" in out.out


def test_help_states_convention():
    out = subprocess.run([sys.executable, "-m", "spinmcg", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "right to left" in out.stdout
