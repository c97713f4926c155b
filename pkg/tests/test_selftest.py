from __future__ import annotations

import pytest

from suborbit5.selftest import SUITES, run_selftest


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_seed_zero(name):
    (result,) = run_selftest((0,), [name])
    assert result.passed, result.line()
    assert result.cases > 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_selftest((0,), ["nope"])


def test_result_line():
    (result,) = run_selftest((1,), ["fingerprints"])
    assert result.line().startswith("pass fingerprints seed=1 cases=")
