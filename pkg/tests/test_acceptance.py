"""The ten acceptance criteria, each timed against its bound."""

from __future__ import annotations

import time
from collections import Counter

from suborbit5.atlas import maximal
from suborbit5.atlas.symplectic import PINNED_PRIMES
from suborbit5.atlas.tables import psl2_on_a5, table2_degree, valid_primes
from suborbit5.orbital import suborbits
from suborbit5.perm import is_primitive
from suborbit5.selftest import DEFAULT_SEEDS, SUITES, run_selftest
from suborbit5.verify import (
    LEMMA_INSTANCES,
    SuiteConfig,
    centralizer_group,
    check_row,
    decomposition_check,
    lemma_check,
    run_suite,
    summarize,
)


def failures(reports) -> list[str]:
    return [f"{r.check_id}: {r.reason}" for r in reports if r.status == "fail"]


def test_criterion_01_table1(acceptance):
    indices = [6, 6, 36, 36, 36, 66, 126, 126, 171]
    bad, worst = [], 0.0
    start = time.perf_counter()
    for row, index in enumerate(indices, 1):
        t = time.perf_counter()
        rep = check_row(1, row)
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        if not rep.passed or rep.measured.get("degree") != index or dt >= 10:
            bad.append(f"r{row}")
    t = time.perf_counter()
    sz8 = check_row(1, 10)
    dt10 = time.perf_counter() - t
    if not sz8.passed or sz8.measured.get("degree") != 1456 or dt10 >= 60:
        bad.append("r10")
    ok = not bad
    acceptance(1, ok, time.perf_counter() - start, 60, f"slowest row 1-9 {worst:.1f} s, Sz(8) {dt10:.1f} s {' '.join(bad)}".rstrip())
    assert ok, bad


def test_criterion_02_table2_affine(acceptance):
    start = time.perf_counter()
    reports = []
    for row in range(1, 9):
        primes = valid_primes(row, 50_000)
        for p in primes:
            rep = check_row(2, row, {"p": p})
            if rep.measured.get("degree") != table2_degree(row, p):
                rep.status = "fail"
            reports.append(rep)
    dt = time.perf_counter() - start
    required = {(1, 11), (1, 31), (2, 19), (2, 29), (3, 2), (3, 3), (3, 7), (3, 13)}
    covered = {(r.row, r.params["p"]) for r in reports}
    bad = failures(reports)
    ok = not bad and required <= covered and dt < 120
    acceptance(2, ok, dt, 120, f"{len(reports)} (row, p) cases")
    assert ok, bad


def test_criterion_03_congruence_rows(acceptance):
    start = time.perf_counter()
    reports = [check_row(2, 9, {"p": p}) for p in (31, 41)]
    reports += [check_row(2, r, {"p": 3}) for r in (10, 11)]
    degrees = [r.measured.get("degree") for r in reports]
    control = psl2_on_a5(29)
    control_ok = control.degree == 203 and is_primitive(control.group)[0] and not suborbits(control.group).of_length(5)
    dt = time.perf_counter() - start
    ok = not failures(reports) and degrees == [248, 574, 6, 6] and control_ok and dt < 60
    acceptance(3, ok, dt, 60, f"degrees {degrees}, control at 203 {'clean' if control_ok else 'FAILED'}")
    assert ok, failures(reports)


def test_criterion_04_lemma_oracle(acceptance):
    start = time.perf_counter()
    reports = [lemma_check(name) for name in LEMMA_INSTANCES]
    dt = time.perf_counter() - start
    ok = len(reports) >= 5 and not failures(reports) and dt < 60
    acceptance(4, ok, dt, 60, f"{len(reports)} instances")
    assert ok, failures(reports)


def test_criterion_05_quotients(acceptance):
    start = time.perf_counter()
    cases = [(3, "psl2-a5", 29, 1), (4, "psl2-a5", 31, 2), (4, "psl2-a5", 41, 2), (5, "psl2sq-a5", 3, 2)]
    bad = []
    for row, key, value, want in cases:
        rep = check_row(4, row, {maximal.family(key).param: value})
        got = rep.measured.get("quotient")
        direct = rep.measured.get("quotient_normalizer", got)
        if not rep.passed or got != want or direct != want:
            bad.append(f"r{row}.{value}: {got}/{direct}")
    dt = time.perf_counter() - start
    ok = not bad and dt < 120
    acceptance(5, ok, dt, 120, " ".join(bad))
    assert ok, bad


def test_criterion_06_centralizers(acceptance):
    start = time.perf_counter()
    cases = [(7, "lemma61", (8, 2)), (23, "lemma61", (24, 2)), (7, "row12", (2, 2)), (13, "row9", (12, 2)), (53, "row10", (54, 2))]
    bad = []
    for p, key, factors in cases:
        cg = centralizer_group(p, key)
        if cg.factors != factors or not (cg.closed and cg.commutes and cg.abelian):
            bad.append(f"{key}@{p}: {cg.factors}")
    dt = time.perf_counter() - start
    ok = not bad and dt < 120
    acceptance(6, ok, dt, 120, " ".join(bad))
    assert ok, bad


def test_criterion_07_decompositions(acceptance):
    start = time.perf_counter()
    reports = [decomposition_check(p, key) for key, primes in PINNED_PRIMES.items() for p in primes]
    dt = time.perf_counter() - start
    ok = not failures(reports) and dt < 30
    acceptance(7, ok, dt, 30, f"{len(reports)} (target, p) cases")
    assert ok, failures(reports)


def test_criterion_08_graphs(acceptance):
    start = time.perf_counter()
    clebsch, sylvester, pgl, kneser = (check_row(3, r) for r in (1, 2, 3, 4))
    k6 = check_row(3, 9, {"p": 3})
    dt = time.perf_counter() - start
    checks = {
        "clebsch": clebsch.passed and clebsch.measured.get("srg") == [16, 5, 0, 2] and clebsch.measured.get("aut_order") == 1920,
        "sylvester": sylvester.passed and sylvester.measured.get("aut_order") == 1440,
        "kneser": kneser.passed and kneser.measured.get("kneser_9_4") is True and kneser.measured.get("aut_order") == 362_880,
        "k6": k6.passed and k6.measured.get("complete") is True,
        "pgl": pgl.passed and pgl.measured.get("n") == 66 and pgl.measured.get("valency") == 5 and pgl.measured.get("arc_transitive") is True,
    }
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and dt < 120
    acceptance(8, ok, dt, 120, " ".join(bad))
    assert ok, bad


def test_criterion_09_property_suites(acceptance):
    start = time.perf_counter()
    results = run_selftest(DEFAULT_SEEDS)
    dt = time.perf_counter() - start
    bad = [r.line() for r in results if not r.passed]
    ok = tuple(DEFAULT_SEEDS) == (0, 1, 2, 3, 4) and len(results) == 5 * len(SUITES) and not bad and dt < 180
    acceptance(9, ok, dt, 180, f"{len(SUITES)} suites x 5 seeds")
    assert ok, bad


# documented skip categories, matched against the skip reason
SKIP_CATEGORIES = {
    "Th out of scope": ("Th is out of scope",),
    "absent generator files": ("needs external generators",),
    "symplectic permutation forms": ("matrix level only", "PSp(6,", "PGSp(6,"),
}


def skip_category(reason: str) -> str | None:
    return next((cat for cat, marks in SKIP_CATEGORIES.items() if any(m in reason for m in marks)), None)


def test_criterion_10_full_verify(acceptance):
    start = time.perf_counter()
    reports, status = run_suite(SuiteConfig())
    dt = time.perf_counter() - start
    counts = summarize(reports)
    skips = [r for r in reports if r.status == "skip"]
    undocumented = [f"{r.check_id}: {r.reason}" for r in skips if skip_category(r.reason) is None]
    ok = status == 0 and counts["fail"] == 0 and counts["pass"] >= 60 and not undocumented and dt < 600
    by_cat = Counter(skip_category(r.reason) for r in skips)
    cats = ", ".join(f"{k} x{v}" for k, v in sorted(by_cat.items(), key=lambda kv: str(kv[0])))
    acceptance(10, ok, dt, 600, f"{counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip ({cats})")
    assert ok, failures(reports) + undocumented
