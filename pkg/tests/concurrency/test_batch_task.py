"""
Unit tests for the `concurrency` module.

"""

from __future__ import annotations

import pytest
from prefect import flow, task

from pointedposets.concurrency.batch_task import BatchTask
from pointedposets.concurrency.kill_switch import CountSwitch, KillSwitchError
from pointedposets.reports import CaseReport, Verdict


@task
def parity(n: int, fail_on: int = 0) -> CaseReport:
    """Pass even numbers; raise on `fail_on`."""
    if fail_on and n == fail_on:
        raise RuntimeError(f"boom at {n}")
    return CaseReport(name=str(n), verdict=Verdict.PASS if n % 2 == 0 else Verdict.FAIL)


class TestBatchTask:
    """Unit tests for `BatchTask`."""

    def test_make_batches(self):
        """Test `_make_batches`."""
        assert BatchTask(parity, 3)._make_batches([1, 2, 3, 4, 5]) == [[1, 2, 3], [4, 5]]
        assert BatchTask(parity, 3)._make_batches([]) == []
        assert BatchTask(parity, 5)._make_batches(range(2)) == [[0, 1]]

    def test_bad_arguments(self):
        with pytest.raises(ValueError, match="batch size"):
            BatchTask(parity, 0)
        with pytest.raises(TypeError, match="KillSwitch"):
            BatchTask(parity, 2, kill_switch="stop")

    @pytest.mark.parametrize(
        "cases,size",
        [
            ([2, 4, 6, 8, 10], 2),
            ([1, 2, 3], 5),
            ([], 3),
        ],
    )
    def test_run(self, cases: list[int], size: int):
        """`run` keeps case order and calls the function in-process."""
        reports = BatchTask(parity, size).run(cases)
        assert [r.name for r in reports] == [str(c) for c in cases]
        assert [r.passed for r in reports] == [c % 2 == 0 for c in cases]

    def test_run_with_kill_switch(self):
        bt = BatchTask(parity, 2, CountSwitch(2))
        with pytest.raises(KillSwitchError) as exc:
            bt.run([2, 3, 4, 5, 6, 7])
        assert isinstance(exc.value.ks, CountSwitch)
        # the whole second batch is collected before the switch fires
        assert [r.name for r in bt.reports] == ["2", "3", "4", "5"]

    @pytest.mark.parametrize(
        "cases,size",
        [
            ([2, 4, 6, 8, 10], 2),
            ([1, 2, 3], 3),
        ],
    )
    def test_map(self, cases: list[int], size: int, harness):
        """Test `BatchTask.map`."""

        @flow
        def test() -> list[CaseReport]:
            """Test flow."""
            return BatchTask(parity, size).map(cases)

        reports = test()
        assert [r.name for r in reports] == [str(c) for c in cases]
        assert [r.passed for r in reports] == [c % 2 == 0 for c in cases]

    def test_map_failed_task_becomes_error(self, harness):
        """A task that raises is reported as an error in its row."""

        @flow
        def test() -> list[CaseReport]:
            return BatchTask(parity, 2).map([2, 4, 6], fail_on=4)

        reports = test()
        assert [r.verdict for r in reports] == [Verdict.PASS, Verdict.ERROR, Verdict.PASS]
        assert reports[1].name == "4"

    def test_map_with_kill_switch(self, harness):
        """Test `BatchTask.map` with a kill switch."""

        @flow
        def test():
            """Test flow."""
            bt = BatchTask(parity, 3, CountSwitch(2))
            bt.map([1, 2, 3, 4, 5, 6, 7, 8, 9])

        with pytest.raises(KillSwitchError) as exc:
            test()
        assert isinstance(exc.value.ks, CountSwitch)
        assert exc.value.ks._current_count == 2
