import csv

import pytest

from degdev.cli import main
from degdev.formats import to_graph6
from degdev.families import make_cycle

P4_TEXT = "4 3\n0 1\n1 2\n2 3\n"


@pytest.fixture
def p4_file(tmp_path):
    f = tmp_path / "p4.txt"
    f.write_text(P4_TEXT)
    return f


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return rc, out, err


def test_measure_p4(capsys, p4_file):
    rc, out, _ = run(capsys, "measure", p4_file)
    assert rc == 0
    assert "s = 2/1 (2.000000)" in out
    assert "n*s = 8" in out
    assert "irr = 2" in out and "irr_t = 4" in out
    assert "spectral holds = true" in out


def test_measure_graph6(capsys, tmp_path):
    f = tmp_path / "c5.g6"
    f.write_text(to_graph6(make_cycle(5)) + "\n")
    rc, out, _ = run(capsys, "measure", f)
    assert rc == 0 and "s = 0/1" in out and "mu = 2.000000000" in out


def test_family_round_trip(capsys, tmp_path):
    rc, out, _ = run(capsys, "family", "cs", 6, 2)
    assert rc == 0
    assert out.splitlines()[0] == "6 9"
    assert out.splitlines()[-1] == "# s = 8/1 (closed form), verified"
    f = tmp_path / "cs62.txt"
    f.write_text(out)
    rc, out, _ = run(capsys, "measure", f)
    assert rc == 0 and "s = 8/1" in out and "n*s = 48" in out


def test_family_pendant_variants(capsys):
    rc, out, _ = run(capsys, "family", "s1", 5, 3)
    assert rc == 0 and out.splitlines()[-1] == "# s = 4/1 (closed form), verified"
    rc, out, _ = run(capsys, "family", "s1", 6, 2, "concentrated")
    assert rc == 0 and "(direct; no closed form" in out


def test_family_bad_k(capsys):
    rc, _, err = run(capsys, "family", "s1", 5, 5)
    assert rc == 2 and "out of range" in err


def test_ascend_with_trace(capsys, tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    trace = tmp_path / "trace.csv"
    rc, out, _ = run(capsys, "ascend", f, "--trace", trace)
    assert rc == 0
    assert "terminal = complete_split k=2" in out
    assert "s terminal = 24/5" in out
    rows = list(csv.reader(trace.open()))
    assert rows[0] == ["step", "action", "detail", "n_s_before", "n_s_after"]
    assert [r[1] for r in rows[1:]] == ["bootstrap", "add_up", "complete_cs"]


def test_verify_conjecture_small(capsys, tmp_path):
    report = tmp_path / "r.csv"
    rc, out, _ = run(capsys, "verify-conjecture", "--n", 3, 4, 5, 6, "--report", report, "--threads", 1)
    assert rc == 0 and out.splitlines()[-1] == "PASS"
    assert report.read_text().splitlines()[1:] == [
        "3,4,4,3,1,true", "4,12,12,4,1,true", "5,24,24,15,2,true", "6,48,48,15,1,true",
    ]


def test_verify_conjecture_detects_planted_mismatch(capsys, tmp_path):
    rc, out, err = run(capsys, "verify-conjecture", "--n", 5, "--expect", 25, "--report", tmp_path / "r.csv")
    assert rc == 1 and "FAIL" in out
    assert "observed max n*s=24, expected 25" in err


def test_verify_conjecture_usage(capsys, tmp_path):
    assert run(capsys, "verify-conjecture", "--n", 8, "--report", tmp_path / "r.csv")[0] == 2
    assert run(capsys, "verify-conjecture", "--n", 2)[0] == 2
    assert run(capsys, "verify-conjecture", "--n", 10, "--extended")[0] == 2


def test_verify_ascent(capsys):
    rc, out, _ = run(capsys, "verify-ascent", "--n", 5)
    assert rc == 0 and "graphs = 728" in out and out.rstrip().endswith("PASS")
    assert run(capsys, "verify-ascent", "--n", 8)[0] == 2


def test_verify_ascent_sampled(capsys):
    rc, out, _ = run(capsys, "verify-ascent", "--n", 7, "--samples", 200, "--seed", 3)
    assert rc == 0 and "graphs = 200" in out


def test_verify_chemical_small(capsys):
    rc, out, _ = run(capsys, "verify-chemical", "--n-max", 8, "--c-max", 9, "--samples", 10,
                     "--exhaustive-n", 5, "--tree-n", 6)
    assert rc == 0 and "exhaustive graphs = 771" in out
    assert run(capsys, "verify-chemical", "--n-min", 9, "--n-max", 8)[0] == 2


def test_verify_forms(capsys, tmp_path):
    out_csv = tmp_path / "d.csv"
    rc, out, _ = run(capsys, "verify-forms", "--out", out_csv, "--n-max", 10, "--closed-n-max", 8)
    assert rc == 0 and out.rstrip().endswith("PASS")
    rows = list(csv.DictReader(out_csv.open()))
    gap = {int(r["n"]): r for r in rows if r["context"] == "family_gap"}
    assert gap[6]["paper_value"] == gap[6]["computed_value"]
    assert gap[8]["paper_value"] != gap[8]["computed_value"]


def test_optimal_k(capsys):
    rc, out, _ = run(capsys, "optimal-k", "--n", 7, "--family", "cs")
    assert rc == 0 and out.splitlines() == ["k = 2"]
    rc, out, _ = run(capsys, "optimal-k", "--n", 8, "--family", "s1")
    assert rc == 0 and out.splitlines()[0] == "k = 5" and "disagrees" in out


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "measure", tmp_path / "missing.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n0 1\n")
    rc, _, err = run(capsys, "measure", bad)
    assert rc == 2 and "duplicate" in err
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2


def test_ascend_rejects_disconnected(capsys, tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("4 2\n0 1\n2 3\n")
    assert run(capsys, "ascend", f)[0] == 2
