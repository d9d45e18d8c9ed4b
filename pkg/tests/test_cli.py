import io
import json
import os
import subprocess
import sys

import pytest

from cli_cases import CASES, DATA, GOLDEN
from make_golden import render
from vgroups.cli import run


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, expect = CASES[name]
    code, text = render(argv)
    assert code == expect
    assert text == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_exit_one_iff_witness(name):
    argv, _ = CASES[name]
    code, text = render(argv)
    report = json.loads(text)
    has_witness = any(c["witnesses"] for c in report["claims"])
    assert (code == 1) == has_witness
    assert report["status"] == ("fails" if has_witness else "holds")


def test_spec_examples():
    code, text = render("thm72 --kernel z3_disc.json --base z2_codisc.json --action neg.json")
    data = json.loads(text)["claims"][-1]["data"]
    assert code == 0 and (data["i"], data["ii"], data["iii"]) == (False, False, False)
    code, text = render("action-rep --kernel z3_disc.json --base z2_disc.json")
    assert code == 0 and json.loads(text)["counts"] == {"classes": 2, "homs": 2}
    code, text = render("validate q_two.json")
    assert code == 0 and not json.loads(text)["claims"][0]["witnesses"]


@pytest.mark.parametrize("argv", [
    "validate q_malformed.json",
    "validate nope.json",
    "thm72 --kernel z3_disc.json",
    "strong --kernel z3_disc.json --base z2_codisc.json --action neg.json --h h_id_z2.json",
    "kan --h h_id_z2.json --psi psi_unit_z2.json",
])
def test_malformed_input_exits_two(argv, capsys):
    code, text = render(argv)
    assert code == 2 and text == ""
    assert capsys.readouterr().err.startswith("error:")


def test_unknown_verb_rejected():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate", "q_two.json"])
    assert exc.value.code == 2


def test_cap_exceeded_exits_three():
    code, text = render("structures --kernel z3_disc.json --base z2_disc.json --cap 3")
    assert code == 3 and text == ""


def test_out_flag(tmp_path):
    out = tmp_path / "r.json"
    code, text = render(f"vaut z3_disc.json --out {out}")
    assert code == 0 and text == ""
    assert out.read_text() == (GOLDEN / "vaut_z3.json").read_text()


def test_default_quantale_flag():
    doc = {"group": "Z3", "structure": "codiscrete"}
    path = DATA / "golden" / ".." / "inline_tmp.json"
    path.write_text(json.dumps(doc))
    try:
        code, text = render("validate --quantale diamond inline_tmp.json")
        assert code == 0
        code, _ = render("validate inline_tmp.json")
        assert code == 2
    finally:
        path.unlink()


def test_console_entry_point_runs_in_subprocess():
    argv, _ = CASES["action_rep_disc"]
    proc = subprocess.run([sys.executable, "-m", "vgroups", *argv.split()], cwd=DATA,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "action_rep_disc.json").read_text()
