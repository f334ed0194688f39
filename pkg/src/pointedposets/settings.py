"""
Configuration for `pointedposets`.

Settings load from environment variables prefixed with `POINTEDPOSETS_` and fall
back to defaults sized for desk-scale runs, so nothing has to be configured.

```bash
# .env
POINTEDPOSETS_ELEMENT_CAP=500000
POINTEDPOSETS_VERIFY_A_MAX_N=7
```

```python
from pointedposets.settings import get_settings

settings = get_settings()
print(settings.element_cap)
# 500000
```

The CLI applies its flags on top with `override_settings`, a `Settings.model_copy(update=...)`
that lasts for one command.
"""

from __future__ import annotations

import contextlib
import functools
from typing import Any, Iterator

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime bounds and defaults."""

    model_config = SettingsConfigDict(env_prefix="POINTEDPOSETS_")

    # Enumeration and exact searches
    element_cap: int = Field(200_000, ge=1)
    isomorphism_bound: int = Field(5_000, ge=1)
    interval_cap: int = Field(20_000, ge=1)

    # Homology sweeps
    homology_a_max_n: int = Field(5, ge=1)
    homology_b_max_n: int = Field(3, ge=1)
    homology_ma_max_n: int = Field(4, ge=1)
    homology_extended_max_n: int = Field(4, ge=1)

    # Theorem sweeps
    verify_a_max_n: int = Field(6, ge=1)
    verify_ma_max_n: int = Field(5, ge=1)
    verify_b_max_n: int = Field(4, ge=1)

    # Lemma grids and series
    lemma_max_n: int = Field(8, ge=1)
    series_order: int = Field(12, ge=1)

    # Sweep runner
    batch_size: int = Field(16, ge=1)
    log_level: str = "WARNING"


@functools.lru_cache(maxsize=1)
def _environment_settings() -> Settings:
    return Settings()


_override: Settings | None = None


def get_settings() -> Settings:
    """Return the process-wide settings: an active override, else the environment's."""
    return _override or _environment_settings()


@contextlib.contextmanager
def override_settings(**updates: Any) -> Iterator[Settings]:
    """Apply `updates` on top of the current settings for the duration of the block.

    ```python
    with override_settings(element_cap=1_000):
        family_poset(FamilySpec(Family.A, 6))  # raises LimitExceeded
    ```
    """
    global _override
    previous = _override
    _override = get_settings().model_copy(update=updates)
    try:
        yield _override
    finally:
        _override = previous
