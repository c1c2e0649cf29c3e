"""Trend-strength signal: net change over a window divided by the summed
absolute per-bar changes.

The value on day t is computed from observations up to and including day
t-1, so the signal is usable on the day it gates: nothing published after
the previous close enters the calculation.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import DataError
from .series import DailySeries, SeriesKind

__all__ = ["ErSeries", "effective_ratio", "negate"]


@dataclass(frozen=True)
class ErSeries:
    """Date-indexed trend-strength values in [-1, 1], None during warm-up."""

    window: int
    dates: tuple[date, ...]
    values: tuple[float | None, ...]
    source_kind: SeriesKind

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if len(self.dates) != len(self.values):
            raise ValueError("dates and values must have the same length")
        for d, v in zip(self.dates, self.values):
            if v is not None and abs(v) > 1.0:
                raise ValueError(
                    f"trend value {v!r} on {d.isoformat()} outside [-1, 1]"
                )

    def __len__(self) -> int:
        return len(self.dates)

    def present(self) -> list[tuple[date, float]]:
        """The (date, value) pairs past the warm-up region."""
        return [(d, v) for d, v in zip(self.dates, self.values) if v is not None]


def effective_ratio(series: DailySeries, window: int) -> ErSeries:
    """Trend strength of ``series`` over a trailing window of bars.

    For the value on day t, the window covers the ``window`` bar-to-bar
    changes ending at day t-1: their plain sum over the sum of their
    absolute values. A flat window (zero denominator) maps to 0. The first
    ``window + 1`` positions have no value.

    Raises:
        ValueError: ``window < 1``.
        DataError: series shorter than ``window + 2`` (no computable point).
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    n = len(series)
    if n < window + 2:
        raise DataError(
            f"series of length {n} has no computable point for window "
            f"{window}; need at least {window + 2} observations"
        )
    deltas = np.diff(series.to_array())
    windows = np.lib.stride_tricks.sliding_window_view(deltas, window)
    # Summing the deltas (rather than subtracting the endpoints) runs the
    # identical reduction over d_i and |d_i|, which keeps |net| <= gross in
    # floating point: ratios stay inside [-1, 1] and a monotone window
    # yields exactly +/-1.
    net = windows.sum(axis=1)
    gross = np.abs(windows).sum(axis=1)
    ratio = np.divide(net, gross, out=np.zeros_like(net), where=gross != 0.0)
    usable = ratio[: n - window - 1]
    values: list[float | None] = [None] * (window + 1)
    values.extend(float(v) for v in usable)
    return ErSeries(window, series.dates, tuple(values), series.kind)


def negate(er: ErSeries) -> ErSeries:
    """Flip the sign of every present value; warm-up stays missing."""
    # 0.0 - v rather than -v keeps zeros positive in rendered output
    flipped = tuple(None if v is None else 0.0 - v for v in er.values)
    return ErSeries(er.window, er.dates, flipped, er.source_kind)
