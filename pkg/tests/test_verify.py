from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from suborbit5.atlas.tables import build_table2_row
from suborbit5.verify import (
    DECOMPOSITION_PATTERNS,
    Report,
    SuiteConfig,
    abelian_invariants,
    cayley_inversion_check,
    centralizer_check,
    centralizer_group,
    check_row,
    decomposition_check,
    lemma_check,
    parse_report_line,
    run_suite,
    suite_jobs,
    write_reports,
)

import numpy as np


# ---------------------------------------------------------------------------
# report format


def test_report_line_layout():
    rep = Report("T9.r01", params={"p": 7}, measured={"b": 2, "a": [1, 2]}, expected={"a": [1, 2]}, seed=3)
    rep.settle()
    line = rep.to_line(timing=False)
    assert line == 'checkId:T9.r01 status:pass params.p:7 measured.a:[1,2] measured.b:2 expected.a:[1,2] seed:3'
    fields = parse_report_line(line)
    assert fields["status"] == "pass" and fields["measured.a"] == "[1,2]"


def test_settle_reports_mismatches():
    rep = Report("x", measured={"a": 1}, expected={"a": 2, "b": True}).settle()
    assert rep.status == "fail" and rep.reason == "mismatch: a,b"


@given(st.dictionaries(st.from_regex(r"[a-z]{1,6}", fullmatch=True), st.one_of(st.integers(), st.booleans(), st.text("abc _", max_size=5)), max_size=5))
def test_report_lines_have_no_spaces_inside_fields(measured):
    line = Report("c", measured=measured).to_line()
    fields = parse_report_line(line)
    assert set(f"measured.{k}" for k in measured) <= set(fields)
    assert "runtimeMs" in fields


# ---------------------------------------------------------------------------
# rows


def test_check_row_table1_row9():
    rep = check_row(1, 9)
    assert rep.passed
    assert rep.measured["degree"] == 171 and rep.measured["suborbit5"] is True


def test_check_row_table4_row4():
    rep = check_row(4, 4, {"p": 41})
    assert rep.passed and rep.measured["quotient"] == 2


def test_check_row_th_is_skipped():
    rep = check_row(1, 13)
    assert rep.status == "skip" and "Th" in rep.reason


def test_check_row_bad_prime_fails_not_crashes():
    rep = check_row(2, 1, {"p": 7})
    assert rep.status == "fail"


def test_lemma_oracle_reports():
    rep = lemma_check("PGL(2,11)-66")
    assert rep.passed


# ---------------------------------------------------------------------------
# symplectic targets


@pytest.mark.parametrize("p, key, factors", [(7, "lemma61", (8, 2)), (13, "row9", (12, 2)), (7, "row12", (2, 2))])
def test_centralizer_group(p, key, factors):
    cg = centralizer_group(p, key)
    assert cg.factors == factors
    assert cg.order % 4 == 0
    assert cg.closed and cg.commutes and cg.abelian


def test_centralizer_quotient_for_row12():
    cg = centralizer_group(7, "row12")
    assert cg.quotient_order == 2
    assert centralizer_check(7, "row12").passed


def test_centralizer_rejects_bad_prime():
    rep = centralizer_check(11, "row9")
    assert rep.status == "fail"


@pytest.mark.parametrize("key", sorted(DECOMPOSITION_PATTERNS))
def test_decomposition_patterns(key):
    p = {"lemma61": 7, "row12": 7, "row9": 13, "row10": 53}[key]
    rep = decomposition_check(p, key)
    assert rep.passed, rep.reason


def test_abelian_invariants_from_orders():
    # Z4 x Z2: orders 1,2,2,2,4,4,4,4
    assert abelian_invariants(np.array([1, 2, 2, 2, 4, 4, 4, 4])) == (4, 2)
    assert abelian_invariants(np.array([1, 2, 3, 6, 3, 6])) == (6,)
    with pytest.raises(ValueError):
        abelian_invariants(np.array([1, 2, 2, 2, 2, 2, 2, 2, 4]))


# ---------------------------------------------------------------------------
# Cayley graphs


@pytest.mark.parametrize("row, p, trivial", [(7, 3, False), (1, 11, False), (8, 2, True), (5, 2, True)])
def test_cayley_inversion(row, p, trivial):
    rep = cayley_inversion_check(build_table2_row(row, p).affine, row)
    assert rep.passed
    assert rep.measured["negation_trivial"] is trivial


# ---------------------------------------------------------------------------
# suite


def test_empty_selection():
    reports, status = run_suite(SuiteConfig(sections=()))
    assert reports == [] and status == 0


def test_unknown_section():
    with pytest.raises(ValueError):
        SuiteConfig(sections=("9",))


def test_table3_section():
    reports, status = run_suite(SuiteConfig(sections=("3",)))
    assert status == 0
    passed = [r for r in reports if r.passed]
    assert len({r.row for r in passed}) == 7  # rows 1-5 and 8, 9 at two primes each
    assert {r.row for r in passed} >= {1, 2, 3, 4, 5}


def test_reports_are_deterministic(tmp_path):
    config = SuiteConfig(sections=("lemma", "cayley"), seed=2)
    a, _ = run_suite(config)
    b, _ = run_suite(config)
    write_reports(a, tmp_path / "a.txt", timing=False)
    write_reports(b, tmp_path / "b.txt", timing=False)
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    assert all(r.seed == 2 for r in a)


def test_default_jobs_cover_documented_skips():
    ids = [job[1][0] for job in suite_jobs(SuiteConfig()) if job[0] == "skip"]
    assert ids == ["T1.r11", "T1.r12", "T1.r13"]
