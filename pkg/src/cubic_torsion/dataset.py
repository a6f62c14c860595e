"""Curve datasets: CSV lines `label,a1,a2,a3,a4,a6`."""

import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .elliptic import Curve

ENV_VAR = "CUBIC_TORSION_DATASET"
BULK_FILE = "cremona_le1000.csv"
TABLE1_FILE = "table1_curves.csv"

_LABEL = re.compile(r"^(\d+)([a-z]+)(\d+)$")


@dataclass(frozen=True)
class CurveRecord:
    label: str
    a_invariants: tuple

    def curve(self) -> Curve:
        return Curve(self.a_invariants, self.label)

    def csv_line(self) -> str:
        return ",".join([self.label] + [str(a) for a in self.a_invariants])


@dataclass(frozen=True)
class IngestError:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


class DatasetError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors[:5]))


def parse_lines(lines) -> tuple:
    """(records, errors); parsing continues past bad lines."""
    records = []
    errors = []
    seen = {}
    first = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        # a header is only honoured before any data line
        if first and fields[0].lower() == "label":
            first = False
            continue
        first = False
        if len(fields) != 6:
            errors.append(IngestError(lineno, f"expected 6 fields (label and five a-invariants), got {len(fields)}"))
            continue
        label = fields[0]
        if not label:
            errors.append(IngestError(lineno, "empty label"))
            continue
        try:
            a = tuple(int(f) for f in fields[1:])
        except ValueError:
            errors.append(IngestError(lineno, f"non-integer a-invariant in {fields[1:]}"))
            continue
        if label in seen:
            errors.append(IngestError(lineno, f"duplicate label {label!r} (first on line {seen[label]})"))
            continue
        try:
            Curve(a, label)
        except ValueError:
            errors.append(IngestError(lineno, f"singular curve {label!r}: discriminant is 0"))
            continue
        seen[label] = lineno
        records.append(CurveRecord(label, a))
    return records, errors


def ingest(path) -> list:
    """Parse a dataset file; raises DatasetError listing every bad line."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    records, errors = parse_lines(lines)
    if errors:
        raise DatasetError(errors)
    return records


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("cubic_torsion") / "data" / name))


def default_dataset_path() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else bundled_path(BULK_FILE)


def conductor_of(label: str) -> Optional[int]:
    m = _LABEL.match(label)
    return int(m.group(1)) if m else None


def label_key(label: str):
    """Sort by conductor, isogeny class, then curve number."""
    m = _LABEL.match(label)
    if not m:
        return (1, label)
    cls = m.group(2)
    return (0, int(m.group(1)), len(cls), cls, int(m.group(3)))


def filter_conductor(records, max_conductor: Optional[int]) -> list:
    if max_conductor is None:
        return list(records)
    out = []
    for r in records:
        n = conductor_of(r.label)
        if n is not None and n <= max_conductor:
            out.append(r)
    return out


def emit_csv(records) -> str:
    return "label,a1,a2,a3,a4,a6\n" + "".join(r.csv_line() + "\n" for r in records)
