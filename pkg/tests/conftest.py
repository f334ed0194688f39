"""
Unit test configuration file.
"""

from __future__ import annotations

import pytest
from prefect.testing.utilities import prefect_test_harness

from pointedposets.partitions import Family, FamilySpec, family_poset
from pointedposets.posetcore import FinitePoset, chain, poset_product
from pointedposets.reports import CaseReport, Verdict


@pytest.fixture
def harness():
    """Return a `prefect_test_harness`."""
    with prefect_test_harness():
        yield


@pytest.fixture(scope="session")
def boolean_lattice() -> FinitePoset:
    """The subsets of a three-element set."""
    return poset_product(poset_product(chain(2), chain(2)), chain(2))


@pytest.fixture(scope="session")
def pointed_a3() -> FinitePoset:
    """The ten pointed partitions of {1, 2, 3}."""
    return family_poset(FamilySpec(Family.A, 3))


@pytest.fixture(scope="session")
def pointed_b2() -> FinitePoset:
    """The thirteen pointed signed partitions of {±1, ±2}."""
    return family_poset(FamilySpec(Family.B, 2))


@pytest.fixture
def passing() -> CaseReport:
    return CaseReport(name="ok", verdict=Verdict.PASS)


@pytest.fixture
def failing() -> CaseReport:
    return CaseReport(name="bad", verdict=Verdict.FAIL, detail="mismatch")
