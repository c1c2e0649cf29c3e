"""Window calibration: scan the least-squares slope between the signed
trend signal and same-day strategy returns, and keep the strongest one.

The signal on day t only uses data through day t-1, so pairing it with the
return realized on day t is the real-time convention: the best (window,
sign) is the configuration whose slope is largest.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .efficiency import effective_ratio
from .errors import DataError, DegenerateError
from .series import DailySeries

__all__ = ["ScanEntry", "ScanResult", "ols_slope", "scan_windows"]


def ols_slope(pairs: Sequence[tuple[float, float]]) -> tuple[float, int]:
    """Slope of y on x with a fitted (unreported) intercept.

    Returns (slope, n). Raises DataError with fewer than 2 pairs and
    DegenerateError when every x is identical.
    """
    arr = np.asarray(pairs, dtype=float)
    if len(arr) < 2:
        raise DataError(f"need at least 2 pairs for a slope, got {len(arr)}")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("pairs must be a sequence of (x, y) tuples")
    n = arr.shape[0]
    x = arr[:, 0]
    y = arr[:, 1]
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise DegenerateError("regressor is constant; slope undefined")
    slope = float(np.dot(dx, y - y.mean()) / sxx)
    return slope, n


@dataclass(frozen=True)
class ScanEntry:
    """One (window, sign) configuration's slope, or why it is absent."""

    window: int
    sign: int
    coefficient: float | None
    n_obs: int
    reason: str | None = None


@dataclass(frozen=True)
class ScanResult:
    entries: tuple[ScanEntry, ...]
    best: ScanEntry
    scan_range: tuple[int, int]


def _best_key(entry: ScanEntry) -> tuple[float, int, int]:
    # max coefficient; ties prefer the smaller window, then sign -1
    return (entry.coefficient, -entry.window, 1 if entry.sign == -1 else 0)


def scan_windows(
    vix: DailySeries,
    returns: DailySeries,
    window_min: int = 1,
    window_max: int = 20,
    signs: Iterable[int] = (-1, 1),
) -> ScanResult:
    """Slope of returns on the signed trend signal for every window in
    [window_min, window_max] and every requested sign.

    Uncomputable configurations (series too short for the window, too few
    overlapping dates, constant signal) stay in the table with a reason
    rather than being dropped; only an entirely empty scan is an error.
    """
    if window_min < 1:
        raise ValueError(f"window_min must be >= 1, got {window_min}")
    if window_max < window_min:
        raise ValueError(
            f"window_max {window_max} must be >= window_min {window_min}"
        )
    sign_list = sorted(set(signs))
    if not sign_list or any(s not in (-1, 1) for s in sign_list):
        raise ValueError(f"signs must be a nonempty subset of {{-1, +1}}")

    ret_by_date = dict(zip(returns.dates, returns.values))
    entries: list[ScanEntry] = []
    for window in range(window_min, window_max + 1):
        try:
            er = effective_ratio(vix, window)
        except DataError as exc:
            for sign in sign_list:
                entries.append(ScanEntry(window, sign, None, 0, str(exc)))
            continue
        base = [
            (v, ret_by_date[d]) for d, v in er.present() if d in ret_by_date
        ]
        for sign in sign_list:
            if len(base) < 2:
                entries.append(
                    ScanEntry(
                        window,
                        sign,
                        None,
                        len(base),
                        f"only {len(base)} overlapping dates; need at least 2",
                    )
                )
                continue
            try:
                slope, n = ols_slope([(sign * e, r) for e, r in base])
            except DegenerateError as exc:
                entries.append(ScanEntry(window, sign, None, len(base), str(exc)))
                continue
            entries.append(ScanEntry(window, sign, slope, n))

    usable = [e for e in entries if e.coefficient is not None]
    if not usable:
        raise DataError(
            "no (window, sign) configuration could be evaluated over "
            f"[{window_min}, {window_max}]"
        )
    best = max(usable, key=_best_key)
    return ScanResult(tuple(entries), best, (window_min, window_max))
