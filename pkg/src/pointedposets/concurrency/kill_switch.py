"""
Kill switch logic classes for stopping a sweep run by a
[`BatchTask`][src.pointedposets.concurrency.batch_task.BatchTask].

Switches read case reports: a report that did not pass (a mismatch or an
error) counts as a failure.

"""

import abc

from pointedposets.reports import CaseReport


class KillSwitchError(Exception):
    """Error raised when a kill switch is activated."""

    def __init__(self, message: str, ks: "KillSwitch"):
        super().__init__(message)
        self.ks = ks


class KillSwitch(abc.ABC):
    """Abstract base class for a kill switch.

    Each invocation of the `should_flip_switch` method should advance the state of the
    kill switch and return if the kill switch should be activated. The
    `raise_if_triggered` method should raise a `KillSwitchError` if the kill switch has
    been activated.

    ```python

    class AnyFailedSwitch(KillSwitch):
        def should_flip_switch(self, report: CaseReport) -> bool:
            return not report.passed

        def raise_if_triggered(self, report: CaseReport):
            if self.should_flip_switch(report):
                raise KillSwitchError(f"Case {report.name} did not pass.", self)
    ```
    """

    @abc.abstractmethod
    def should_flip_switch(self, report: CaseReport) -> bool:
        """Check if this report should flip the kill switch.

        Returns:
            `True` if the kill switch should be activated, `False` otherwise.

        """

    @abc.abstractmethod
    def raise_if_triggered(self, report: CaseReport):
        """Check a report and raise a `KillSwitchError` if the kill switch has been activated.

        Raises:
            KillSwitchError: If the kill switch has been activated.

        """


class AnyFailedSwitch(KillSwitch):
    """A kill switch that activates on the first case that does not pass."""

    def should_flip_switch(self, report: CaseReport) -> bool:
        return not report.passed

    def raise_if_triggered(self, report: CaseReport):
        if self.should_flip_switch(report):
            raise KillSwitchError(f"Case {report.name} did not pass.", self)


class CountSwitch(KillSwitch):
    """A kill switch that activates once `max_count` cases have not passed.

    Args:
        max_count (int): The number of failing reports that triggers the switch.

    """

    def __init__(self, max_count: int):
        if max_count < 1:
            raise ValueError(f"Expected max_count >= 1, got {max_count}.")
        self.max_count = max_count
        self._current_count = 0

    def should_flip_switch(self, report: CaseReport) -> bool:
        """Count the report if it did not pass and return if the count reached the maximum."""
        if not report.passed:
            self._current_count += 1
        return self._current_count >= self.max_count

    def raise_if_triggered(self, report: CaseReport):
        if self.should_flip_switch(report):
            raise KillSwitchError(f"{self.max_count} failing cases detected.", self)


class RateSwitch(KillSwitch):
    """A kill switch that activates after the failure rate exceeds a certain threshold.
    Requires a minimum number of reports to sample.

    Args:
        min_sample (int): The minimum number of reports to sample.
        max_fail_rate (float): The maximum frequency of failing reports.

    """

    def __init__(self, min_sample: int, max_fail_rate: float):
        self.min_sample = min_sample
        self.max_fail_rate = max_fail_rate
        self._current_count = 0
        self._failed_count = 0

    def should_flip_switch(self, report: CaseReport) -> bool:
        """Count the report and return if the failure rate equals or exceeds the max rate."""
        self._current_count += 1
        if not report.passed:
            self._failed_count += 1
        return (
            self._current_count >= self.min_sample
            and self._failed_count / self._current_count >= self.max_fail_rate
        )

    def raise_if_triggered(self, report: CaseReport):
        if self.should_flip_switch(report):
            raise KillSwitchError(
                f"Failure rate exceeded {self.max_fail_rate} after {self._current_count} cases.",
                self,
            )
