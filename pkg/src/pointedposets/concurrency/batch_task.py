"""
Batched, interruptible sweeps over independent verification cases.
"""

from __future__ import annotations

from typing import Any, Sequence

from prefect import unmapped
from prefect.futures import PrefectFuture
from prefect.tasks import Task

from pointedposets import logging, states
from pointedposets.concurrency.kill_switch import KillSwitch
from pointedposets.reports import CaseReport


class BatchTask:
    """Wraps a `Task` that checks one case and returns a `CaseReport`, running it
    over many cases in batches. Batching bounds the number of concurrent task
    runs and lets a kill switch stop a failing sweep early.

    ```python
    from prefect import flow, task
    from pointedposets.concurrency import BatchTask
    from pointedposets.identities import check_theorem_case, theorem_cases

    @task
    def check(case):
        return check_theorem_case(case)

    @flow
    def sweep():
        return BatchTask(check, 8).map(theorem_cases("A", 4))

    ```

    The `kill_switch` argument stops the sweep once a condition on the reports
    is met; `reports` keeps every report collected before the switch fired.

    ```python
    from pointedposets.concurrency import AnyFailedSwitch, BatchTask, KillSwitchError

    batch = BatchTask(check, 8, kill_switch=AnyFailedSwitch())
    try:
        batch.run(cases)
    except KillSwitchError:
        partial = batch.reports
    ```

    See [kill switches][src.pointedposets.concurrency.kill_switch] for more information.

    """

    def __init__(self, task: Task, size: int, kill_switch: KillSwitch | None = None):
        """Wrap the `task` to be executed in batches of `size`.

        Args:

                task (Task): The task to wrap; its first parameter receives the case.
                size (int): The number of cases per batch.
                kill_switch (KillSwitch, optional): A kill switch to stop the sweep
                    after a certain condition is met.
        """
        if size < 1:
            raise ValueError(f"Expected a batch size >= 1, got {size}.")
        if kill_switch is not None and not isinstance(kill_switch, KillSwitch):
            raise TypeError(
                f"Expected 'kill_switch' to be a subclass of 'KillSwitch', got {type(kill_switch)}."
            )
        self.task: Task = task
        self.size: int = size
        self._kill_switch = kill_switch
        self.reports: list[CaseReport] = []

    def _make_batches(self, cases: Sequence[Any]) -> list[list[Any]]:
        """Split `cases` into consecutive batches of at most `size`.

        Examples:

            ```python
            BatchTask(task, 3)._make_batches([1, 2, 3, 4, 5])
            ```
            ```json
            [[1, 2, 3], [4, 5]]
            ```
        """
        if not hasattr(cases, "__iter__"):
            raise ValueError("Expected 'cases' to be an iterable.")
        cases = list(cases)
        return [cases[k : k + self.size] for k in range(0, len(cases), self.size)]

    def _collect(self, reports: list[CaseReport]):
        self.reports.extend(reports)
        if self._kill_switch is not None:
            for report in reports:
                self._kill_switch.raise_if_triggered(report)

    def map(self, cases: Sequence[Any], **kwds: Any) -> list[CaseReport]:
        """Run `Task.map` over each batch inside a Prefect flow.

        Each batch is awaited before the next is submitted. Its states become
        reports (a failed or crashed run becomes an `error` report), and every
        report goes through the kill switch.

        Args:

            cases: One entry per task run, passed as the first argument.
            **kwds: Arguments shared by every run; passed `unmapped`.

        Returns:
            The reports, in the order of `cases`.

        Raises:
            KillSwitchError: When the kill switch fires; `reports` holds the
                reports collected so far.
        """
        self.reports = []
        batches = self._make_batches(cases)
        logger = logging.get_prefect_or_default_logger()
        shared = {k: unmapped(v) for k, v in kwds.items()}
        for i, batch in enumerate(batches):
            logger.debug(f"Mapping {self.task.name} batch {i+1} of {len(batches)}.")
            futures: list[PrefectFuture] = self.task.map(batch, **shared)
            final = [f.wait() for f in futures]
            if not all(states.is_terminal(s) for s in final):
                raise RuntimeError(f"Batch {i+1} of {self.task.name} did not finish.")
            self._collect([states.report_from_state(s, c) for s, c in zip(final, batch)])
        return list(self.reports)

    def run(self, cases: Sequence[Any], **kwds: Any) -> list[CaseReport]:
        """The same batching and kill switch, calling the task's function in-process.

        Returns:
            The reports, in the order of `cases`.

        Raises:
            KillSwitchError: As in `map`.
        """
        self.reports = []
        batches = self._make_batches(cases)
        logger = logging.get_prefect_or_default_logger()
        for i, batch in enumerate(batches):
            logger.debug(f"Running {self.task.name} batch {i+1} of {len(batches)} in-process.")
            self._collect([self.task.fn(case, **kwds) for case in batch])
        return list(self.reports)
