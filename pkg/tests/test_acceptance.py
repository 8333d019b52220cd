"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest -s tests/test_acceptance.py` to watch the per-criterion
lines; the CLI command `galois-loci selftest` drives the same suite.
"""

import pytest

from galois_loci.acceptance import CRITERIA, run_criterion
from galois_loci.config import RunConfig

CONFIG = RunConfig()


@pytest.mark.parametrize("index", [idx for idx, *_ in CRITERIA])
def test_acceptance_criterion(index):
    result = run_criterion(index, CONFIG)
    print(result.line())
    assert result.passed, result.line()
