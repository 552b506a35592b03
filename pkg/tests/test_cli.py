import json
import subprocess
import sys

import pytest

from hgx.cli import main
from hgx.constructions import A_nrs
from hgx.hypercore import canonical_form, read_hg, write_hg
from hgx.invariants import expansion

from samples import C4, C4_3, K3


@pytest.fixture
def files(tmp_path):
    write_hg(C4, tmp_path / "c4.hg")
    write_hg(C4_3, tmp_path / "c4cubed.hg")
    write_hg(K3, tmp_path / "k3.hg")
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant_q(files, capsys):
    code, out, _ = run(["invariant", "q", "--in", files / "c4cubed.hg"], capsys)
    assert code == 0 and out.strip() == "q = 2"


def test_invariant_json(files, capsys):
    code, out, _ = run(["invariant", "q", "--in", files / "k3.hg", "--json", files / "q.json"], capsys)
    assert out.strip() == "q = inf"
    data = json.loads((files / "q.json").read_text())
    assert data == {"name": "q", "value": "inf", "witness": []}


def test_invariant_domain_error(files, capsys):
    code, _, err = run(["invariant", "p", "--in", files / "k3.hg"], capsys)
    assert code == 1 and "red-blue" in err


def test_construct_then_matching(files, capsys):
    star = files / "star.hg"
    assert run(["construct", "anrs", "--n", 8, "--r", 3, "--s", 1, "-o", star], capsys)[0] == 0
    code, out, _ = run(["invariant", "matching", "--in", star], capsys)
    assert code == 0 and out.strip() == "matching = 1"


def test_construct_round_trip(files, capsys):
    path = files / "a.hg"
    run(["construct", "A_nrs", "--n", 9, "--r", 3, "--s", 2, "-o", path], capsys)
    assert canonical_form(read_hg(path)) == canonical_form(A_nrs(9, 3, 2))
    code, out, _ = run(["construct", "g2prime", "--n", 11, "--r", 3, "--s", 3, "--params", "k=4,x=1,y=2", "--count-only"], capsys)
    assert code == 0 and out.strip() == "64"
    code, out, _ = run(["construct", "multipartite", "--r", 3, "--parts", "2,2,2"], capsys)
    assert out.splitlines()[0] == "3 6 8"


def test_construct_errors(files, capsys):
    assert run(["construct", "nope", "--n", 5], capsys)[0] == 1
    assert run(["construct", "anrs", "--n", 5, "--r", 3], capsys)[0] == 1
    assert run(["construct", "anrs", "--params", "k"], capsys)[0] == 1


def test_expand(files, capsys):
    out_path = files / "e.hg"
    assert run(["expand", "--in", files / "c4.hg", "--r", 4, "-o", out_path], capsys)[0] == 0
    assert read_hg(out_path) == expansion(C4, 4)


def test_check_free_exit_codes(files, capsys):
    write_hg(A_nrs(6, 2, 1), files / "star.hg")
    assert run(["check-free", "--in", files / "star.hg", "--forbid", files / "k3.hg"], capsys)[0] == 0
    write_hg(A_nrs(6, 2, 2), files / "two.hg")
    code, out, _ = run(["check-free", "--in", files / "two.hg", "--forbid", files / "k3.hg"], capsys)
    assert code == 1 and out.startswith("contains")


def test_solve(files, capsys):
    code, out, _ = run(
        ["solve", "-n", 6, "-r", 2, "--forbid", files / "k3.hg", "--json", files / "s.json", "-o", files / "w.hg"], capsys
    )
    assert code == 0 and "optimum = 9" in out
    data = json.loads((files / "s.json").read_text())
    assert data["optimum"] == 9 and data["proof_status"] == "optimal"
    assert data["family"] == [str(files / "k3.hg")]
    assert len(data["witness"]["edges"]) == 9
    assert read_hg(files / "w.hg").m == 9


def test_solve_needs_family(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "-n", "5", "-r", "2"])
    assert exc.value.code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "nope", "--in", "x.hg"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "emc", "--n", "a:b", "--s", "1"])
    assert exc.value.code == 2


def test_missing_file(tmp_path, capsys):
    code, _, err = run(["invariant", "q", "--in", tmp_path / "none.hg"], capsys)
    assert code == 1 and "none.hg" in err


def test_formula(capsys):
    code, out, _ = run(["formula", "f_wxyz", "--params", "n=9,r=3,k=4,x=0,y=1,w=1,z=1"], capsys)
    assert code == 0 and out.startswith("f_wxyz = 189/4")


def test_verify_emc_byte_stable(tmp_path, capsys):
    args = ["verify", "emc", "--r", 2, "--s", 2, "--n", "8:10"]
    code, out, _ = run(args + ["--json", tmp_path / "a.json"], capsys)
    assert code == 0
    run(args + ["--json", tmp_path / "b.json"], capsys)
    a = (tmp_path / "a.json").read_bytes()
    assert a.replace(b"a.json", b"b.json") == (tmp_path / "b.json").read_bytes()
    data = json.loads(a)
    assert [rec["verdict"] for rec in data["records"]] == ["equal"] * 3
    assert [rec["solver"] for rec in data["records"]] == [13, 15, 17]
    assert data["totals"]["ok"] is True


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "hgx.cli", "invariant", "chi", "--in", str(files / "k3.hg")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "chi = 3"
