import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from coherent.cli import main

EXAMPLES = Path(__file__).resolve().parent.parent / "examples_problems"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_rules_all_pass():
    code, text = run("run", "--rules", "all")
    assert code == 0
    assert text.strip().endswith("13/13 rules pass")


def test_json_modus_ponens_interval():
    code, text = run("run", "--json", str(EXAMPLES / "mp.problem"))
    assert code == 0
    reports = json.loads(text)
    [ext] = [r for r in reports if r["query"] == "extend C?"]
    assert ext["interval"]["lo"] == "1" and ext["interval"]["hi"] == "1"


def test_table_for_conjunction():
    code, text = run("run", "--table", str(EXAMPLES / "conj2.problem"))
    assert code == 0
    lines = text.splitlines()
    start = next(i for i, line in enumerate(lines) if line.strip().startswith("constituent"))
    rows = [line.split()[-1] for line in lines[start + 2 : start + 7]]
    assert sorted(rows) == ["0", "1", "x", "y", "z"]
    assert "interval: [1/4,1/2]" in text


def test_json_round_trip():
    code, text = run("check", "--json", "--table", str(EXAMPLES / "system_p.problem"))
    assert code == 0
    data = json.loads(text)
    assert json.loads(json.dumps(data)) == data
    assert [r["holds"] for r in data if "holds" in r] == [True, True, True, False]


def test_parse_error_exit_code(capsys):
    code, _ = run("check", str(EXAMPLES / "bad.problem"))
    assert code == 2
    assert "UnsatisfiableAntecedent" in capsys.readouterr().err


def test_engine_error_does_not_stop_later_queries(tmp_path):
    f = tmp_path / "mixed.problem"
    f.write_text("atom A C;\ncond a = A;\ncond c = C | A;\nassess P(a) = 1;\nassess P(c) = 0;\n"
                 "cond na = ~A;\nassess P(na) = 1;\ncoherent?\nqc {a, c}?\n")
    code, text = run("check", "--json", str(f))
    reports = json.loads(text)
    assert code == 0
    assert reports[0]["coherent"] is False
    f.write_text("atom A C;\ncond a = A;\ncond c = C | A;\nassess P(a) = 1;\nassess P(c) = 1;\n"
                 "cond na = ~A;\nassess P(na) = 1;\nextend C?\nqc {a, c}?\n")
    code, text = run("check", "--json", str(f))
    reports = json.loads(text)
    assert code == 1
    assert reports[0]["error"]["kind"] == "IncoherentBase"
    assert "qc" in reports[1]


def test_max_atoms_guard():
    code, text = run("check", "--max-atoms", "1", "--json", str(EXAMPLES / "mp.problem"))
    assert code == 1
    assert json.loads(text)[0]["error"]["kind"] == "TooManyAtoms"
    run("check", str(EXAMPLES / "mp.problem"))  # restores the default limit


def test_module_entry_point():
    env = {**os.environ, "COHERENT_VERBOSITY": "1"}
    proc = subprocess.run(
        [sys.executable, "-m", "coherent", "check", str(EXAMPLES / "mp.problem")],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0
    assert "interval: {1}" in proc.stdout and "level 1:" in proc.stdout


@pytest.mark.parametrize("name", sorted(p.name for p in EXAMPLES.glob("*.problem")))
def test_examples_run(name):
    code, _ = run("check", "--json", str(EXAMPLES / name))
    assert code == (2 if name == "bad.problem" else 0)
