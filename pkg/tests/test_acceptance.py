"""Acceptance gate: the eight verification suites, each exact, each timed.

Run with `pytest -s` to see the one-line-per-criterion output that the
`wittlam selftest` subcommand also prints.
"""

import pytest

from wittlam import acceptance


@pytest.mark.parametrize("number", range(1, 9))
def test_suite(number):
    suite = acceptance.ALL_SUITES[number - 1]
    result = suite(seed=0)
    print(result.line())
    assert result.passed, result.failures
    assert result.elapsed < result.target, (
        f"suite {number} exceeded its runtime target: "
        f"{result.elapsed:.1f}s >= {result.target}s"
    )


def test_run_all_matches_selftest():
    results = acceptance.run_all(seed=0, numbers={5, 8})
    assert [r.number for r in results] == [5, 8]
    assert all(r.passed for r in results)
