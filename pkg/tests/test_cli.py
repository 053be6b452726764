import json
import subprocess
import sys

import pytest

from forbconf.cli import main
from forbconf.constructions import A_k
from forbconf.matrix import parse, serialize


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_stdout_and_file(capsys, tmp_path):
    code, out, err = run(capsys, "gen", "A_k:m=6,k=4")
    assert code == 0 and err.strip() == "6 32 simple"
    assert parse(out) == A_k(6, 4)
    target = tmp_path / "a.bm"
    code, out, _ = run(capsys, "gen", "boundary:i=3,k=4", "--out", str(target))
    assert code == 0 and out.strip() == "4 8 simple"
    assert parse(target.read_text()).shape == (4, 8)


def test_gen_f_value(capsys):
    code, out, _ = run(capsys, "gen", "f:m=10,k=5", "--json")
    assert code == 0 and json.loads(out) == {"m": 10, "k": 5, "value": 260}


def test_contains_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "contains", "11/10/01", "A_k:m=5,k=3")
    assert code == 0 and out.startswith("contained")
    code, out, _ = run(capsys, "contains", "named:tag=F_4", "A_k:m=5,k=3")
    assert code == 1 and out.strip() == "absent"
    path = tmp_path / "i2.bm"
    path.write_text("2 2\n10\n01\n")
    code, out, _ = run(capsys, "contains", str(path), "standard:kind=K,k=3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["contained"] and len(rec["rows"]) == 2
    assert min(rec["rows"] + rec["columns"]) >= 1


def test_forb_exact(capsys, tmp_path):
    out_path = tmp_path / "w.bm"
    code, out, _ = run(capsys, "forb", "--m", "4", "named:tag=F_3", "--threads", "1", "--out", str(out_path))
    assert code == 0
    assert "value=8" in out and "status=exact" in out and "provenance=exhaustive" in out
    assert parse(out_path.read_text()).num_cols == 8


def test_forb_budget_exit(capsys):
    code, out, _ = run(capsys, "forb", "--m", "6", "boundary:i=3,k=4", "--threads", "1", "--budget-nodes", "5", "--json")
    rec = json.loads(out)
    assert code == 3 and rec["status"] == "lower-bound-only"


def test_forb_bounds(capsys):
    code, out, _ = run(capsys, "forb", "--m", "10", "boundary:i=3,k=5", "--mode", "bounds")
    assert code == 0 and "value=260" in out and "status=exact" in out and "family=5x16#" in out
    code, out, _ = run(capsys, "forb", "--m", "8", "boundary:i=3,k=8", "--mode", "bounds", "--json")
    rec = json.loads(out)
    assert rec["status"] == "interval" and rec["upper"] == 254


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "lemma-ak", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "contains", "11/1", "11/01")[0] == 2
    assert run(capsys, "gen", "nope:m=1")[0] == 2
    bad = tmp_path / "bad.bm"
    bad.write_text("2 2\n10\n01")
    assert run(capsys, "contains", str(bad), "11/01")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "f.bm"
    p.write_text(serialize(A_k(3, 3)))
    proc = subprocess.run([sys.executable, "-m", "forbconf", "contains", "10/01", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and "contained" in proc.stdout
