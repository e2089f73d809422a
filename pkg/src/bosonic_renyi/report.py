"""JSON-lines and CSV writers for harness output.

Floats are written with ``repr`` so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, TextIO

SUMMARY_COLUMNS = ("functional", "D", "p", "kappa", "tau", "trials", "failures", "min_slack", "min_slack_seed")


def write_jsonl(records: Iterable, fh: TextIO) -> int:
    n = 0
    for rec in records:
        data = rec.to_dict() if hasattr(rec, "to_dict") else rec
        fh.write(json.dumps(data, sort_keys=True) + "\n")
        n += 1
    return n


def write_summary_csv(summary: Iterable, fh: TextIO) -> None:
    """One row per grid cell that saw at least one trial."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for cell in summary:
        if cell.trials == 0:
            continue
        writer.writerow(
            [
                cell.functional,
                cell.modes,
                repr(cell.p),
                repr(cell.kappa),
                repr(cell.tau),
                cell.trials,
                cell.failures,
                repr(cell.min_slack),
                "" if cell.min_slack_seed is None else cell.min_slack_seed,
            ]
        )


def write_rows_csv(rows: list[dict], fh: TextIO) -> None:
    if not rows:
        return
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
