"""Access to the bundled reference tables (see data/reference_values.json).

The values are kept in a versioned data file, separate from code, so that
any disagreement between a live computation and the published number stays
auditable.  Cells listed under known_deviations could not be reproduced;
their independently recomputed values are stored alongside.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

__all__ = ["load", "table", "table_tags", "known_deviations", "deviation_for"]


@lru_cache(maxsize=1)
def load() -> dict:
    path = resources.files("reho").joinpath("data/reference_values.json")
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def table_tags() -> list[str]:
    return sorted(load()["tables"])


def table(tag: str) -> dict:
    tables = load()["tables"]
    if tag not in tables:
        raise KeyError(f"unknown reference table {tag!r}; available: {sorted(tables)}")
    return tables[tag]


def known_deviations() -> list[dict]:
    return load()["known_deviations"]


def deviation_for(tag: str, m: int, lam: float | None) -> dict | None:
    """The recorded deviation entry for one cell, if any."""
    for dev in known_deviations():
        if dev["table"] == tag and dev["m"] == m:
            if lam is None or abs(dev["lambda"] - lam) <= 1e-15 * max(1.0, abs(lam)):
                return dev
    return None
