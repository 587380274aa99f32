import json

import pytest

from ramcorr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_ramanujan_small(capsys):
    code, out, _ = run(capsys, "verify", "ramanujan", "small")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert {c["status"] for c in rep["checks"]} == {"pass"}


def test_verify_bogus(capsys):
    assert run(capsys, "verify", "bogus")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2


def test_correlate_constant_instance(capsys):
    code, out, _ = run(capsys, "correlate", "--f", "indicator_primes", "--gprime", "unit", "--N", "20", "--Q", "4")
    assert code == 0
    rows = [r.split(",") for r in out.splitlines()]
    assert rows[0] == ["a", "C", "expansion", "match"]
    assert all(r[3] == "1" for r in rows[1:51])


def test_correlate_csv_sources(tmp_path, capsys):
    f = tmp_path / "f.csv"
    f.write_text("n,num,den\n1,1,2\n2,-3,4\n3,5,1\n")
    g = tmp_path / "g.csv"
    g.write_text("1,1,1\n2,2,3\n")
    code, out, _ = run(capsys, "correlate", "--f", str(f), "--gprime", str(g), "--N", "3", "--Q", "2", "--shifts", "1:4")
    assert code == 0
    first = out.splitlines()[1].split(",")
    # C(1) = f(1) g(2) + f(2) g(3) + f(3) g(4) with g = 1 + 2/3 on evens
    assert first[1] == "101/12"


def test_correlate_rejects_long_range(capsys):
    assert run(capsys, "correlate", "--f", "one", "--gprime", "one", "--N", "3", "--Q", "5")[0] == 1


def test_decompose_and_wintner(capsys, tmp_path):
    assert run(capsys, "decompose", "--random", "2", "--shifts", "1:10", "--out", str(tmp_path))[0] == 0
    assert (tmp_path / "decomposition.csv").read_text().startswith("a,C,P,S,char_delta")
    code, out, _ = run(capsys, "wintner-ipp", "--random", "2", "--format", "json")
    assert code == 0 and all(r["match"] == "1" for r in json.loads(out))


def test_hl_demo(capsys):
    code, out, _ = run(capsys, "hl-demo", "--shift", "2", "--cutoffs", "1", "10000")
    rows = [r.split(",") for r in out.splitlines()]
    assert float(rows[1][1]) == 1.0
    assert abs(float(rows[2][3])) < 1e-2
    assert run(capsys, "hl-demo", "--shift", "3")[0] == 1


def test_tables(capsys):
    code, out, _ = run(capsys, "ramanujan", "--q", "6", "--n", "3")
    assert out.splitlines()[1] == "6,3,-2"
    code, out, _ = run(capsys, "characters", "3")
    assert out.splitlines()[0] == "residue,chi0,chi1"
    code, out, _ = run(capsys, "transform", "--f", "unit", "--M", "10", "--ell", "1", "--given-transform")
    assert out.splitlines()[1] == "1,1,EXACT"
    code, out, _ = run(capsys, "transform", "--f", "unit", "--M", "10", "--ell", "1")
    assert out.splitlines()[1] == "1,19/210,PARTIAL"
    code, out, _ = run(capsys, "transform", "--f", "kappa", "--M", "6", "--period", "6", "--ell", "1")
    assert out.splitlines()[1] == "1,19/6,EXACT"
