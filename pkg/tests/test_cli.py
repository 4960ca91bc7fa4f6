import json

import pytest

from twistss.cli import main
from twistss.models import model_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_bundled_name(capsys):
    code, out, err = run(capsys, "analyze", "torus3", "--twist", "e1^e2^e3")
    assert code == 0
    assert "twisted cohomology: even 3, odd 3" in out
    assert "overall: PASS" in out


def test_analyze_by_path(capsys):
    code, out, _ = run(capsys, "analyze", model_path("su3"), "--twist", "x3")
    assert code == 0
    assert "even 0, odd 0" in out


def test_analyze_untwisted(capsys):
    code, out, _ = run(capsys, "analyze", "heisenberg")
    assert code == 0
    assert "overall: PASS" in out


def test_analyze_json_round_trip(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, _, _ = run(
        capsys, "analyze", "cascade3", "--twist", "a", "--format", "json", "--out", str(target)
    )
    assert code == 0
    text = target.read_text()
    doc = json.loads(text)
    assert doc["schema_version"] == 1
    assert doc["overall"] == "pass"
    re_emitted = json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n"
    assert re_emitted == text


def test_analyze_max_page(capsys):
    code, out, _ = run(capsys, "analyze", "torus3", "--twist", "e1^e2^e3", "--max-page", "3")
    assert code == 0
    assert "E_3" in out and "E_4" not in out


def test_analyze_missing_model_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "no_such_model_anywhere")
    assert code == 2
    assert "error" in err


def test_analyze_bad_twist_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "torus3", "--twist", "e1")
    assert code == 2
    assert "degree >= 3" in err


def test_analyze_corrupt_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ this is not json")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2
    assert "JSON" in err


def test_massey_triple(capsys):
    code, out, _ = run(capsys, "massey", "heisenberg", "--triple", "a", "b", "b")
    assert code == 0
    assert "nonzero" in out


def test_massey_banded(capsys):
    code, out, _ = run(
        capsys, "massey", "torus3", "--twist", "e1^e2^e3", "--thm41", "--class", "e1", "--t", "1"
    )
    assert code == 0
    assert "matches" in out


def test_massey_diagonal_d9(capsys):
    code, out, _ = run(
        capsys, "massey", "cascade5", "--twist", "a", "--thm42", "--class", "x", "--t", "3", "--s", "2"
    )
    assert code == 0
    assert "matches" in out
    assert "a^v" in out


def test_massey_diagonal_not_applicable(capsys):
    code, out, _ = run(
        capsys, "massey", "cascade5", "--twist", "a", "--thm42", "--class", "x", "--t", "2", "--s", "2"
    )
    assert code == 0
    assert "not applicable" in out


def test_massey_dead_class_exits_2(capsys):
    code, _, err = run(
        capsys, "massey", "torus3", "--twist", "e1^e2^e3", "--thm41", "--class", "1", "--t", "1"
    )
    assert code == 2
    assert "survive" in err


def test_massey_missing_args_exit_2(capsys):
    code, _, err = run(capsys, "massey", "torus3", "--thm41")
    assert code == 2
