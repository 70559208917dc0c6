"""CSV and JSON writers with fixed, byte-stable number formatting."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from .schedules import PulseSchedule, schedule_to_dict


def fmt(x) -> str:
    """12 significant digits in scientific notation; ints, bools and strings verbatim."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.11e}"
    return str(x)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return p


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def write_schedule_json(path, schedule: PulseSchedule) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(schedule_to_dict(schedule), indent=2) + "\n")
    return p
