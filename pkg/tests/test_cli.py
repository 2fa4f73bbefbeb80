"""Command-line interface: subcommand output formats, exit codes, and
byte-level determinism."""

import json
import shutil
import subprocess

from superspecial.cli import CSV_HEADER, main
from superspecial.modclass import canonical_module, module_to_dict, random_conjugate


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------

def test_count_json_pinned_bytes(capsys):
    code, out, err = run_cli(capsys, "count", "--p", "11", "--g", "2", "--json")
    assert code == 0 and err == ""
    assert out == ('{"p":11,"g":2,"branch":"3mod8","h_field":1,"h_order":3,'
                   '"unit_index":3,"per_genus":[1,1,3],"total":5}\n')


def test_count_plain_output(capsys):
    code, out, _ = run_cli(capsys, "count", "--p", "11", "--g", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p: 11"
    assert "total: 5" in lines
    assert "per_genus: 1,1,3" in lines


def test_count_rejects_composite_p(capsys):
    code, out, err = run_cli(capsys, "count", "--p", "4", "--g", "1")
    assert code == 2
    assert "p must be prime" in err


def test_count_rejects_missing_args(capsys):
    code, _, _ = run_cli(capsys, "count", "--p", "11")
    assert code == 2
    code, _, _ = run_cli(capsys)
    assert code == 2
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 2


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def test_table_csv_header_and_rows(capsys):
    code, out, _ = run_cli(capsys, "table", "--pmax", "30", "--g", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER
    assert CSV_HEADER == "p,g,branch,h_field,h_order,unit_index,total,genus_sum_total"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["2", "3", "5", "7", "11", "13", "17", "19", "23", "29"]
    for r in rows:
        assert r[6] == r[7]  # total == genus_sum_total on every row
    assert lines[1] == "2,2,2or1mod4,1,1,1,1,1"
    assert lines[5] == "11,2,3mod8,1,3,3,5,5"


def test_table_json_format(capsys):
    code, out, _ = run_cli(capsys, "table", "--pmax", "12", "--g", "1",
                           "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [row["p"] for row in rows] == [2, 3, 5, 7, 11]
    assert rows[4] == {"p": 11, "g": 1, "branch": "3mod8", "h_field": 1,
                       "h_order": 3, "unit_index": 3, "total": 4,
                       "genus_sum_total": 4}


def test_table_rejects_bad_format(capsys):
    code, _, err = run_cli(capsys, "table", "--pmax", "12", "--g", "1",
                           "--format", "xml")
    assert code == 2


# ---------------------------------------------------------------------------
# classnum / classgroup
# ---------------------------------------------------------------------------

def test_classnum_with_oracle(capsys):
    code, out, _ = run_cli(capsys, "classnum", "--disc", "-23", "--oracle")
    assert code == 0
    assert out == "3, oracle 3, agree\n"


def test_classnum_plain(capsys):
    code, out, _ = run_cli(capsys, "classnum", "--disc", "-5460")
    assert code == 0
    assert out == "16\n"


def test_classnum_rejects_bad_disc(capsys):
    code, _, err = run_cli(capsys, "classnum", "--disc", "-5")
    assert code == 2
    code, _, err = run_cli(capsys, "classnum", "--disc", "7")
    assert code == 2


def test_classgroup_structure(capsys):
    code, out, _ = run_cli(capsys, "classgroup", "--disc", "-23")
    assert code == 0
    doc = json.loads(out)
    assert doc["D"] == -23 and doc["h"] == 3
    assert doc["elements"][0] == {"form": [1, 1, 6], "order": 1}
    assert sorted(e["order"] for e in doc["elements"]) == [1, 3, 3]


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def _write_module(tmp_path, m, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(module_to_dict(m)))
    return str(path)


def test_decompose_reports_invariants(capsys, tmp_path):
    m = random_conjugate(canonical_module(7, 6, 1, 1, 1), 17)
    code, out, _ = run_cli(capsys, "decompose", "--file", _write_module(tmp_path, m))
    assert code == 0
    assert json.loads(out) == {"p": 7, "k": 6, "n": 4, "case": "b",
                               "r": 1, "s": 1, "t": 1}


def test_decompose_split_reports_verified_matrix(capsys, tmp_path):
    m = random_conjugate(canonical_module(11, 6, 1, 1), 23)
    code, out, _ = run_cli(capsys, "decompose", "--file",
                           _write_module(tmp_path, m), "--split")
    assert code == 0
    doc = json.loads(out)
    assert doc["case"] == "a" and (doc["r"], doc["s"]) == (1, 1)
    assert doc["verified"] is True
    assert len(doc["U"]) == 4 and all(len(row) == 4 for row in doc["U"])


def test_decompose_invalid_module_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 6, "k": 6, "n": 1, "entries": [10]}))
    code, _, err = run_cli(capsys, "decompose", "--file", str(path))
    assert code == 2
    assert "prime" in err


def test_decompose_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    code, _, err = run_cli(capsys, "decompose", "--file", str(path))
    assert code == 2
    code, _, err = run_cli(capsys, "decompose", "--file",
                           str(tmp_path / "missing.json"))
    assert code == 2


def test_decompose_precision_failure_exits_1(capsys, tmp_path):
    # entries satisfy the polynomial mod 64 but the last diagonal value is
    # not the truncation of an exact root: decompose sees a plausible
    # pattern, split must fail and the CLI must report exit code 1
    path = tmp_path / "shifted.json"
    path.write_text(json.dumps({
        "p": 7, "k": 6, "n": 4,
        "entries": [0, -8, 0, 0, 1, -2, 0, 0, 0, 0, 10, 0, 0, 0, 0, 20]}))
    code, out, _ = run_cli(capsys, "decompose", "--file", str(path))
    assert code == 0
    assert json.loads(out)["t"] == 1
    code, _, err = run_cli(capsys, "decompose", "--file", str(path), "--split")
    assert code == 1
    assert "invariant violation" in err


# ---------------------------------------------------------------------------
# hecke / deuring
# ---------------------------------------------------------------------------

def test_hecke_json(capsys):
    code, out, _ = run_cli(capsys, "hecke", "--p", "7", "--g", "3", "--ell", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["pic_R_loc"] == 1
    assert doc["guarantee"] is True
    assert doc["orbit_total_guaranteed"] == 4
    assert doc["per_genus_quotients"] == [1, 1, 1, 1]


def test_hecke_no_guarantee(capsys):
    code, out, _ = run_cli(capsys, "hecke", "--p", "11", "--g", "2", "--ell", "13")
    assert code == 0
    doc = json.loads(out)
    assert doc["guarantee"] is False
    assert doc["orbit_total_guaranteed"] is None


def test_hecke_rejects_even_ell(capsys):
    code, _, err = run_cli(capsys, "hecke", "--p", "7", "--g", "1", "--ell", "2")
    assert code == 2


def test_deuring_table(capsys):
    code, out, _ = run_cli(capsys, "deuring", "--pmax", "30")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p,h,hprime,t,verdict"
    assert lines[1] == "5,1,1,1,ok"
    assert lines[3] == "11,2,2,2,ok"
    assert all(line.endswith(",ok") for line in lines[1:])


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def test_selftest_passes(capsys):
    code, out, _ = run_cli(capsys, "selftest")
    assert code == 0
    lines = out.splitlines()
    ok_lines = [line for line in lines if line.startswith("ok - ")]
    assert len(ok_lines) == 8
    assert lines[-1].startswith("selftest: all 8 checks passed")


def test_selftest_custom_seed(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--seed", "7")
    assert code == 0
    assert out.splitlines()[-1].startswith("selftest: all 8 checks passed")


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------

def test_identical_argv_byte_identical_output(capsys):
    for argv in (["count", "--p", "23", "--g", "3", "--json"],
                 ["table", "--pmax", "50", "--g", "2"],
                 ["classgroup", "--disc", "-47"],
                 ["selftest"],
                 ["deuring", "--pmax", "40"]):
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2, argv


# ---------------------------------------------------------------------------
# console entry point
# ---------------------------------------------------------------------------

def test_console_script_installed():
    exe = shutil.which("superspecial")
    assert exe, "console script not on PATH"
    out = subprocess.run([exe, "count", "--p", "11", "--g", "2", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout == ('{"p":11,"g":2,"branch":"3mod8","h_field":1,'
                          '"h_order":3,"unit_index":3,"per_genus":[1,1,3],'
                          '"total":5}\n')
    bad = subprocess.run([exe, "count", "--p", "4", "--g", "1"],
                         capture_output=True, text=True)
    assert bad.returncode == 2
