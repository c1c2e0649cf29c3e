"""Daily series data model and CSV ingestion.

Series are trading-day indexed: strictly increasing calendar dates with no
gap filling, matching how daily strategy returns and volatility-index
levels are quoted. Returns are stored as fractions (-0.10 for -10%);
percent formatting is presentation only.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import DataError

__all__ = [
    "SeriesKind",
    "DailySeries",
    "load_daily_series",
    "write_daily_series",
    "align",
]


class SeriesKind(str, Enum):
    RETURN = "return"
    VIX_LEVEL = "vix"
    EQUITY = "equity"


@dataclass(frozen=True)
class DailySeries:
    """Immutable date-indexed sequence of float observations."""

    dates: tuple[date, ...]
    values: tuple[float, ...]
    kind: SeriesKind

    def __post_init__(self) -> None:
        if len(self.dates) != len(self.values):
            raise ValueError("dates and values must have the same length")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur == prev:
                raise DataError(f"duplicate date {cur.isoformat()}")
            if cur < prev:
                raise ValueError(
                    f"dates must be strictly increasing; saw {prev} then {cur}"
                )
        for d, v in zip(self.dates, self.values):
            if not math.isfinite(v):
                raise ValueError(f"non-finite value {v!r} on {d.isoformat()}")
            if self.kind is SeriesKind.VIX_LEVEL and v <= 0:
                raise DataError(
                    f"nonpositive VIX level {v!r} on {d.isoformat()}"
                )

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[date, float]], kind: SeriesKind
    ) -> "DailySeries":
        """Build a series from (date, value) pairs, sorting by date."""
        ordered = sorted(pairs, key=lambda p: p[0])
        return cls(
            tuple(d for d, _ in ordered),
            tuple(float(v) for _, v in ordered),
            kind,
        )

    def __len__(self) -> int:
        return len(self.dates)

    def __iter__(self) -> Iterator[tuple[date, float]]:
        return iter(zip(self.dates, self.values))

    def to_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def load_daily_series(
    path: str | Path, kind: SeriesKind, percent: bool = False
) -> DailySeries:
    """Load a ``date,value`` CSV into a :class:`DailySeries`.

    Rows are sorted by date regardless of input order. ``percent=True``
    divides each value by 100 for files quoting returns in percent.

    Raises:
        DataError: on a malformed row (named by line number), a duplicate
            date, or a nonpositive value when ``kind`` is ``VIX_LEVEL``.
    """
    path = Path(path)
    pairs: list[tuple[date, float]] = []
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file, expected 'date,value' header")
        if [c.strip().lower() for c in header] != ["date", "value"]:
            raise DataError(
                f"{path}:1: expected header 'date,value', got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise DataError(
                    f"{path}:{lineno}: expected 2 columns, got {len(row)}"
                )
            try:
                d = date.fromisoformat(row[0].strip())
            except ValueError as exc:
                raise DataError(
                    f"{path}:{lineno}: unparsable date {row[0]!r} (want YYYY-MM-DD)"
                ) from exc
            try:
                v = float(row[1])
            except ValueError as exc:
                raise DataError(
                    f"{path}:{lineno}: unparsable number {row[1]!r}"
                ) from exc
            if not math.isfinite(v):
                raise DataError(f"{path}:{lineno}: non-finite value {row[1]!r}")
            pairs.append((d, v / 100.0 if percent else v))
    try:
        return DailySeries.from_pairs(pairs, kind)
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from exc


def write_daily_series(series: DailySeries, path: str | Path) -> None:
    """Write a ``date,value`` CSV; floats use repr so reloading is exact."""
    lines = ["date,value"]
    lines += [f"{d.isoformat()},{v!r}" for d, v in series]
    Path(path).write_text("\n".join(lines) + "\n")


def align(a: DailySeries, b: DailySeries) -> list[tuple[date, float, float]]:
    """Inner-join two series on date; dates present in only one are dropped.

    Raises:
        DataError: if the two calendars do not intersect.
    """
    lookup = dict(zip(b.dates, b.values))
    pairs = [
        (d, va, lookup[d]) for d, va in zip(a.dates, a.values) if d in lookup
    ]
    if not pairs:
        raise DataError("series share no dates (disjoint calendars)")
    return pairs
