"""
Prefect flows for the verification sweeps.

Each flow maps one task per case through a
[`BatchTask`][src.pointedposets.concurrency.batch_task.BatchTask] and returns
the same report as the local functions in `identities` and `homology`.

```python
from pointedposets.flows import verify_theorems_flow

report = verify_theorems_flow("A", max_n=4, max_failures=1)
print(report.passed)
# True
```

`sweep` is the shared runner; with `in_flow=False` it calls the task functions
in-process, which is what the CLI does without `--prefect`.
"""

from __future__ import annotations

from typing import Any, Sequence

from prefect import flow, task
from prefect.tasks import Task

from pointedposets.concurrency import BatchTask, CountSwitch, KillSwitchError
from pointedposets.homology import (
    capped_interval_pairs,
    check_homology_bound,
    interval_report,
    summarize_intervals,
)
from pointedposets.identities import (
    LEMMAS,
    LemmaSpec,
    check_theorem_case,
    default_max_n,
    theorem_cases,
    verify_lemma,
)
from pointedposets.logging import get_prefect_or_default_logger
from pointedposets.partitions import Family, FamilySpec, family_poset
from pointedposets.posetcore import FinitePoset
from pointedposets.reports import (
    CaseReport,
    CohenMacaulayReport,
    IntervalReport,
    LemmaReport,
    SweepReport,
    TheoremCase,
    TheoremCaseReport,
)
from pointedposets.settings import get_settings


@task
def check_theorem_task(case: TheoremCase, perturb: TheoremCase | None = None) -> TheoremCaseReport:
    """Compare one case with its closed form; `perturb` names the negative control."""
    return check_theorem_case(case, perturbed=case == perturb)


@task
def verify_lemma_task(spec: LemmaSpec) -> LemmaReport:
    return verify_lemma(spec)


@task
def interval_task(pair: tuple[int, int], poset: FinitePoset) -> IntervalReport:
    return interval_report(poset, *pair)


def sweep(
    task: Task,
    cases: Sequence[Any],
    title: str,
    batch_size: int | None = None,
    max_failures: int | None = None,
    in_flow: bool = True,
    **kwds: Any,
) -> SweepReport:
    """Run `task` over `cases` in batches and collect a `SweepReport`.

    A kill switch with `max_failures` stops the sweep; the partial report is
    returned with `stopped_early` set.

    Args:
        task (Task): A task returning a `CaseReport` for its first argument.
        cases (Sequence): The cases, in report order.
        title (str): Title of the report.
        batch_size (int, optional): Cases per batch, default `Settings.batch_size`.
        max_failures (int, optional): Failing cases that stop the sweep.
        in_flow (bool): Map Prefect task runs; otherwise call the task function.
        **kwds: Arguments shared by every case.
    """
    size = get_settings().batch_size if batch_size is None else batch_size
    switch = CountSwitch(max_failures) if max_failures else None
    batch = BatchTask(task, size, kill_switch=switch)
    try:
        rows = batch.map(cases, **kwds) if in_flow else batch.run(cases, **kwds)
    except KillSwitchError as exc:
        logger = get_prefect_or_default_logger(__name__)
        logger.warning(f"{title}: stopped after {len(batch.reports)} of {len(cases)} cases ({exc}).")
        return SweepReport(title=title, rows=list(batch.reports), stopped_early=True)
    return SweepReport(title=title, rows=rows)


def theorem_sweep(
    group: str,
    max_n: int | None = None,
    batch_size: int | None = None,
    max_failures: int | None = None,
    perturb_first: bool = False,
    in_flow: bool = True,
) -> SweepReport:
    max_n = default_max_n(group) if max_n is None else max_n
    cases = theorem_cases(group, max_n)
    return sweep(
        check_theorem_task,
        cases,
        f"theorems {group} (n <= {max_n})",
        batch_size,
        max_failures,
        in_flow,
        perturb=cases[0] if perturb_first and cases else None,
    )


def lemma_sweep(
    grid: Sequence[LemmaSpec] | None = None,
    batch_size: int | None = None,
    max_failures: int | None = None,
    in_flow: bool = True,
) -> SweepReport:
    grid = [LemmaSpec(name) for name in LEMMAS] if grid is None else list(grid)
    return sweep(verify_lemma_task, grid, "identities", batch_size, max_failures, in_flow)


def _errored_interval(poset: FinitePoset, pair: tuple[int, int], report: CaseReport) -> IntervalReport:
    a, b = pair
    return IntervalReport(
        name=f"[{poset.elements[a]}, {poset.elements[b]}]",
        verdict=report.verdict,
        detail=report.detail,
        bottom=poset.elements[a],
        top=poset.elements[b],
        rank=poset.rank[b] - poset.rank[a],
        mobius=poset.mobius_row(a)[b],
        euler=0,
    )


@flow(name="verify-theorems")
def verify_theorems_flow(
    group: str,
    max_n: int | None = None,
    batch_size: int | None = None,
    max_failures: int | None = None,
    perturb_first: bool = False,
) -> SweepReport:
    """Compare every case of a theorem group with its closed form, one task per case."""
    return theorem_sweep(group, max_n, batch_size, max_failures, perturb_first)


@flow(name="verify-lemmas")
def verify_lemmas_flow(
    grid: list[LemmaSpec] | None = None,
    batch_size: int | None = None,
    max_failures: int | None = None,
) -> SweepReport:
    """Check identities over their grids, one task per identity."""
    return lemma_sweep(grid, batch_size, max_failures)


@flow(name="cohen-macaulay")
def cohen_macaulay_flow(
    family: Family, n: int, i: int | None = None, batch_size: int | None = None
) -> CohenMacaulayReport:
    """Check every interval of rank at least 2 of one family member, one task per interval.

    Raises:
        OutOfRange: If `n` is above the family's `Settings.homology_*_max_n` bound.
    """
    spec = FamilySpec(family, n, i)
    check_homology_bound(spec)
    poset = family_poset(spec)
    pairs = capped_interval_pairs(poset, str(spec))
    logger = get_prefect_or_default_logger(__name__)
    logger.info(f"Checking {len(pairs)} intervals of {spec}.")
    size = get_settings().batch_size if batch_size is None else batch_size
    reports = BatchTask(interval_task, size).map(pairs, poset=poset)
    reports = [
        r if isinstance(r, IntervalReport) else _errored_interval(poset, pair, r)
        for r, pair in zip(reports, pairs)
    ]
    return summarize_intervals(str(spec), reports)
