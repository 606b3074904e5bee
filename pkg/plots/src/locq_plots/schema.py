"""CSV reading against the public sweep/bench schemas.

This package deliberately depends only on the documented CSV columns, not
on the decoder library, so the figures can be regenerated from archived
result files alone.
"""

from __future__ import annotations

import csv


class SchemaError(Exception):
    """Input CSV does not match the expected column layout."""


SWEEP_COLUMNS = [
    "code_id", "decoder", "L", "p", "p_erase",
    "trials", "failures", "rate", "ci_lo", "ci_hi", "seed",
]
BENCH_COLUMNS = ["decoder", "size", "n", "ops", "seconds"]


def read_rows(path: str, expected: list[str]) -> list[dict[str, str]]:
    """Read a CSV, verifying every expected column is present."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in expected if c not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing columns {missing}; found {header}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows
