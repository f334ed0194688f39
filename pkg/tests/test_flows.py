"""
Tests for the flows module.
"""

from __future__ import annotations

import pytest

from pointedposets.errors import OutOfRange
from pointedposets.flows import (
    check_theorem_task,
    cohen_macaulay_flow,
    lemma_sweep,
    sweep,
    theorem_sweep,
    verify_lemmas_flow,
    verify_theorems_flow,
)
from pointedposets.identities import LemmaSpec, theorem_cases
from pointedposets.partitions import Family
from pointedposets.reports import Verdict


class TestLocalSweeps:
    """Sweeps that call the task functions in-process."""

    def test_theorem_sweep(self):
        report = theorem_sweep("A", 3, batch_size=2, in_flow=False)
        assert report.passed
        assert [r.name for r in report.rows] == [str(c) for c in theorem_cases("A", 3)]
        assert report.title == "theorems A (n <= 3)"

    def test_negative_control(self):
        report = theorem_sweep("B", 2, perturb_first=True, in_flow=False)
        assert not report.passed
        assert report.rows[0].verdict is Verdict.FAIL
        assert all(r.passed for r in report.rows[1:])

    def test_kill_switch_keeps_partial_report(self):
        report = theorem_sweep("A", 3, batch_size=2, max_failures=1, perturb_first=True, in_flow=False)
        assert report.stopped_early
        assert not report.passed
        assert len(report.rows) == 2

    def test_lemma_sweep(self):
        report = lemma_sweep([LemmaSpec("facteur", 3), LemmaSpec("Mdominant", 3)], in_flow=False)
        assert report.passed
        assert [r.name for r in report.rows] == ["facteur", "Mdominant"]

    def test_sweep_shared_arguments(self):
        cases = theorem_cases("A_extended", 2)
        report = sweep(check_theorem_task, cases, "demo", batch_size=5, in_flow=False, perturb=cases[1])
        assert [r.passed for r in report.rows] == [True, False]


class TestFlows:
    """The same sweeps as Prefect flows."""

    def test_verify_theorems_flow(self, harness):
        report = verify_theorems_flow("A", max_n=3, batch_size=3)
        assert report.passed
        assert len(report.rows) == len(theorem_cases("A", 3))

    def test_verify_theorems_flow_negative(self, harness):
        report = verify_theorems_flow("MA", max_n=2, perturb_first=True)
        assert not report.passed
        assert report.failures[0].name == "MA(n=1)"

    def test_verify_theorems_flow_stops(self, harness):
        report = verify_theorems_flow("A", max_n=3, batch_size=2, max_failures=1, perturb_first=True)
        assert report.stopped_early
        assert len(report.rows) == 2

    def test_verify_lemmas_flow(self, harness):
        grid = [LemmaSpec("facteur", 3), LemmaSpec("usefulB", 2, perturbed=True)]
        report = verify_lemmas_flow(grid)
        assert [r.passed for r in report.rows] == [True, False]

    def test_cohen_macaulay_flow(self, harness):
        report = cohen_macaulay_flow(Family.A_FIXED, 4, 1, batch_size=4)
        assert report.passed
        assert report.name == "A_fixed(n=4, i=1)"
        assert report.checked == len(report.intervals)

    def test_cohen_macaulay_flow_above_bound(self, harness):
        with pytest.raises(OutOfRange, match="homology bound"):
            cohen_macaulay_flow(Family.A, 6)
