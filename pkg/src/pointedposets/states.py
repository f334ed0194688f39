"""
Prefect states of verification tasks, read as case reports.

"""

from __future__ import annotations

from typing import Any

from prefect import states

from pointedposets.reports import CaseReport, Verdict


def is_terminal(state: states.State) -> bool:
    """Return True if the state is terminal. Terminal states are:

    - Cancelled
    - Completed
    - Crashed
    - Failed
    """
    TERMINALS = [
        state.is_cancelled,
        state.is_completed,
        state.is_crashed,
        state.is_failed,
    ]
    return any(terminal() for terminal in TERMINALS)


def report_from_state(state: states.State, case: Any) -> CaseReport:
    """Return the task's report if the run completed with one.

    Any other outcome becomes an `error` report naming `case` and the state, so
    a crashed or failed task still occupies its row in the sweep.

    Args:
        state (State): A terminal state of a task returning a `CaseReport`.
        case (Any): The case the task ran on; used for the report name.
    """
    if state.is_completed():
        result = state.result(raise_on_failure=False)
        if isinstance(result, CaseReport):
            return result
        return CaseReport(
            name=str(case),
            verdict=Verdict.ERROR,
            detail=f"Expected a CaseReport, got {type(result).__name__}.",
        )
    message = state.message or state.type.value
    return CaseReport(name=str(case), verdict=Verdict.ERROR, detail=f"{state.name}: {message}")
