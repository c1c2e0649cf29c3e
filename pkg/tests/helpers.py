"""Shared fixtures builders and independent reference implementations.

The oracles here deliberately avoid the library's code paths: plain
loops, brute-force scans, and mpmath extended precision. Unit and
acceptance tests compare against them.
"""
from __future__ import annotations

import datetime as dt

from mpmath import mp, mpf, sqrt as mp_sqrt

from vixgate import DailySeries, SeriesKind

mp.dps = 50


def day(i: int, start: dt.date = dt.date(2024, 1, 1)) -> dt.date:
    return start + dt.timedelta(days=i)


def dates_for(n: int, start: dt.date = dt.date(2024, 1, 1)) -> tuple[dt.date, ...]:
    return tuple(day(i, start) for i in range(n))


def make_series(values, kind: SeriesKind = SeriesKind.RETURN,
                start: dt.date = dt.date(2024, 1, 1)) -> DailySeries:
    values = tuple(float(v) for v in values)
    return DailySeries(dates_for(len(values), start), values, kind)


def er_reference(values, window: int) -> list:
    """Plain-loop trend ratio; None during warm-up."""
    out: list = [None] * len(values)
    for t in range(window + 1, len(values)):
        deltas = [
            values[t - i] - values[t - 1 - i] for i in range(1, window + 1)
        ]
        gross = sum(abs(d) for d in deltas)
        net = values[t - 1] - values[t - 1 - window]
        out[t] = 0.0 if gross == 0 else net / gross
    return out


def brute_max_drawdown(equity) -> float:
    """Exhaustive scan over every ordered (peak index, trough index) pair."""
    worst = 0.0
    for i in range(len(equity)):
        for j in range(i, len(equity)):
            dd = (equity[i] - equity[j]) / equity[i]
            if dd > worst:
                worst = dd
    return worst


def mp_sharpe(returns, annualization: int = 252) -> mpf:
    """Two-pass mean/std Sharpe in extended precision."""
    r = [mpf(repr(v)) for v in returns]
    n = len(r)
    mean = sum(r) / n
    var = sum((x - mean) ** 2 for x in r) / (n - 1)
    return mean / mp_sqrt(var) * mp_sqrt(mpf(annualization))


def mp_calmar(equity, annualization: int = 252) -> mpf:
    """Annualized growth over brute-force drawdown in extended precision."""
    e = [mpf(repr(v)) for v in equity]
    n = len(e)
    growth = (e[-1] / e[0]) ** (mpf(annualization) / n) - 1
    worst = mpf(0)
    for i in range(n):
        for j in range(i, n):
            dd = (e[i] - e[j]) / e[i]
            if dd > worst:
                worst = dd
    return growth / worst


def mp_ols_slope(pairs) -> mpf:
    """Closed-form slope in extended precision."""
    xs = [mpf(repr(x)) for x, _ in pairs]
    ys = [mpf(repr(y)) for _, y in pairs]
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    num = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    den = sum((x - xbar) ** 2 for x in xs)
    return num / den


def strip_sigma_squared(strikes, spacings, mids, t, r, forward, x0) -> float:
    """Straight-line strip summation with plain float accumulation."""
    import math

    total = 0.0
    for x, dx, mid in zip(strikes, spacings, mids):
        total += dx / (x * x) * math.exp(r * t) * mid
    return (2.0 / t) * total - (1.0 / t) * (forward / x0 - 1.0) ** 2


def mp_strip_sigma_squared(strikes, spacings, mids, t, r, forward, x0) -> mpf:
    """Strip summation in extended precision."""
    from mpmath import exp as mp_exp

    t = mpf(repr(t))
    r = mpf(repr(r))
    total = mpf(0)
    for x, dx, mid in zip(strikes, spacings, mids):
        x = mpf(repr(float(x)))
        total += mpf(repr(float(dx))) / (x * x) * mp_exp(r * t) * mpf(repr(float(mid)))
    fwd = mpf(repr(float(forward)))
    x0 = mpf(repr(float(x0)))
    return (2 / t) * total - (1 / t) * (fwd / x0 - 1) ** 2


def rel_err(value: float, reference) -> float:
    reference = float(reference)
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)
