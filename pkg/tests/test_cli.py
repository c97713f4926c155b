from __future__ import annotations

import subprocess
import sys

import pytest

from suborbit5.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--table", "1", "--row", "9")
    assert code == 0
    assert out.strip() == "degree 171, order 3420, stabilizer D10(20)"


def test_graph_export(capsys, tmp_path):
    path = tmp_path / "clebsch.el"
    code, out, _ = run(capsys, "graph", "--table", "3", "--row", "1", "--out", str(path))
    assert code == 0
    assert "SRG(16,5,0,2)" in out and "16 vertices, 40 edges" in out
    lines = path.read_text().splitlines()
    assert lines[0] == "16 40" and len(lines) == 41


def test_normquot(capsys):
    code, out, _ = run(capsys, "normquot", "--family", "psl2-a5", "--p", "29")
    assert code == 0
    assert out.splitlines()[0] == "1 (no length-5 suborbit)"
    code, out, _ = run(capsys, "normquot", "--table", "4", "--row", "4", "--p", "41")
    assert out.splitlines() == ["2 (1 length-5 suborbit)", "normalizer route: 2"]


def test_suborbits_and_digraphs(capsys, tmp_path):
    code, out, _ = run(capsys, "suborbits", "--table", "2", "--row", "1", "--p", "11")
    assert code == 0 and out.strip() == "degree 11: 1 5^2"
    code, out, _ = run(capsys, "digraphs", "--table", "2", "--row", "1", "--p", "11", "--out", str(tmp_path))
    assert code == 0 and out.startswith("2 digraph(s)")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["digraph0.el", "digraph1.el"]


def test_modrep(capsys):
    code, out, _ = run(capsys, "modrep", "--target", "lemma61", "--p", "7")
    assert code == 0
    assert out.splitlines()[0].startswith("centralizer Z8xZ2, order 16")


def test_verify_section(capsys, tmp_path):
    out_file = tmp_path / "reports.txt"
    code, _, err = run(capsys, "verify", "--sections", "lemma", "--no-timing", "--out", str(out_file))
    assert code == 0
    assert "0 fail" in err
    assert all("runtimeMs" not in line for line in out_file.read_text().splitlines())


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--seeds", "0", "--suites", "fingerprints")
    assert code == 0 and out.startswith("pass fingerprints")


@pytest.mark.parametrize(
    "argv",
    [
        ("construct", "--table", "1"),
        ("construct", "--table", "2", "--row", "1", "--p", "7"),
        ("construct", "--table", "1", "--row", "14"),
        ("construct", "--family", "nope", "--p", "3"),
        ("modrep", "--target", "row9", "--p", "17"),
        ("verify", "--jobs", "0"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "usage:" in err and "error:" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--table", "9", "--row", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unsupported_row_exit_2(capsys):
    code, _, err = run(capsys, "construct", "--table", "4", "--row", "9")
    assert code == 2 and "PSp(6,p)" in err


def test_identical_invocations_identical_output():
    cmd = [sys.executable, "-m", "suborbit5.cli", "verify", "--sections", "cayley", "--no-timing"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True)
    b = subprocess.run(cmd, capture_output=True, text=True, check=True)
    assert a.stdout == b.stdout and a.stdout.count("status:pass") == 8
