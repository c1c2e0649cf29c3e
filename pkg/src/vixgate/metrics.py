"""Equity curves and risk metrics for original versus gated returns.

Skipped days earn exactly zero: no cash yield and no transaction cost.
All metrics annualize with 252 trading days unless overridden, use a zero
risk-free rate, and the sample (n-1) standard deviation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateError
from .gating import Decision, GateSignal
from .series import DailySeries, SeriesKind

__all__ = [
    "TRADING_DAYS_PER_YEAR",
    "BacktestReport",
    "apply_gate",
    "equity_curve",
    "sharpe_ratio",
    "max_drawdown",
    "annualized_return",
    "calmar_ratio",
    "compare",
]

TRADING_DAYS_PER_YEAR = 252


def apply_gate(returns: DailySeries, gate: GateSignal) -> DailySeries:
    """Zero out returns on Skip days; NoSignal and Trade keep the return.

    Raises:
        DataError: the gate does not cover every return date.
    """
    decisions = gate.by_date()
    missing = [d for d in returns.dates if d not in decisions]
    if missing:
        raise DataError(
            f"gate does not cover {len(missing)} return date(s), "
            f"first missing {missing[0].isoformat()}"
        )
    gated = tuple(
        0.0 if decisions[d] is Decision.SKIP else v for d, v in returns
    )
    return DailySeries(returns.dates, gated, SeriesKind.RETURN)


def equity_curve(returns: DailySeries, initial: float = 5.0) -> DailySeries:
    """Compound ``initial`` through the returns, one value per return date.

    Raises:
        DataError: any return at or below -100%, named by date.
    """
    if not (math.isfinite(initial) and initial > 0):
        raise ValueError(f"initial value must be positive, got {initial!r}")
    values = []
    equity = initial
    for d, r in returns:
        if r <= -1.0:
            raise DataError(
                f"return {r!r} on {d.isoformat()} wipes out the portfolio"
            )
        equity *= 1.0 + r
        values.append(equity)
    return DailySeries(returns.dates, tuple(values), SeriesKind.EQUITY)


def sharpe_ratio(
    returns: DailySeries, annualization: int = TRADING_DAYS_PER_YEAR
) -> float:
    """Mean over sample standard deviation, scaled by sqrt(annualization).

    Zero risk-free rate. Raises DataError with fewer than 2 observations
    and DegenerateError when the variance is zero.
    """
    r = returns.to_array()
    if len(r) < 2:
        raise DataError(f"need at least 2 returns, got {len(r)}")
    # an exactly constant series can still show a ~1e-18 std from summation
    # rounding, so test the values, not the computed std
    if np.all(r == r[0]):
        raise DegenerateError("zero return variance; ratio undefined")
    std = float(r.std(ddof=1))
    if std == 0.0:
        raise DegenerateError("zero return variance; ratio undefined")
    return float(r.mean()) / std * math.sqrt(annualization)


def max_drawdown(equity: DailySeries) -> float:
    """Largest peak-to-trough fractional decline, in [0, 1]."""
    e = equity.to_array()
    if len(e) == 0:
        raise DataError("empty equity curve")
    if np.any(e <= 0.0):
        raise DataError("equity values must be positive")
    peaks = np.maximum.accumulate(e)
    return float(np.max((peaks - e) / peaks))


def annualized_return(
    equity: DailySeries, annualization: int = TRADING_DAYS_PER_YEAR
) -> float:
    """Compound growth rate of the curve over a full trading year."""
    e = equity.values
    if len(e) < 2:
        raise DataError(f"need at least 2 equity points, got {len(e)}")
    if e[0] <= 0 or e[-1] <= 0:
        raise DataError("equity values must be positive")
    return (e[-1] / e[0]) ** (annualization / len(e)) - 1.0


def calmar_ratio(
    equity: DailySeries, annualization: int = TRADING_DAYS_PER_YEAR
) -> float:
    """Annualized return over max drawdown.

    Raises DegenerateError when the curve never draws down (callers report
    that as "no drawdown" rather than a number).
    """
    growth = annualized_return(equity, annualization)
    mdd = max_drawdown(equity)
    if mdd == 0.0:
        raise DegenerateError("no drawdown; ratio undefined")
    return growth / mdd


@dataclass(frozen=True)
class BacktestReport:
    """Equity curve plus the three headline metrics for one return stream."""

    equity: DailySeries
    initial_value: float
    sharpe: float
    mdd: float
    calmar: float | None  # None when the curve never draws down
    n_days: int
    n_skipped: int
    annualization: int = TRADING_DAYS_PER_YEAR

    @property
    def final_value(self) -> float:
        return self.equity.values[-1] if len(self.equity) else self.initial_value

    def to_dict(self) -> dict:
        return {
            "sharpe": self.sharpe,
            "mdd": self.mdd,
            "calmar": self.calmar,
            "final_value": self.final_value,
        }


def _report(
    returns: DailySeries,
    initial: float,
    annualization: int,
    n_skipped: int,
) -> BacktestReport:
    equity = equity_curve(returns, initial)
    sharpe = sharpe_ratio(returns, annualization)
    mdd = max_drawdown(equity)
    try:
        calmar = calmar_ratio(equity, annualization)
    except DegenerateError:
        calmar = None
    return BacktestReport(
        equity=equity,
        initial_value=initial,
        sharpe=sharpe,
        mdd=mdd,
        calmar=calmar,
        n_days=len(returns),
        n_skipped=n_skipped,
        annualization=annualization,
    )


def compare(
    returns: DailySeries,
    gate: GateSignal,
    initial: float = 5.0,
    annualization: int = TRADING_DAYS_PER_YEAR,
) -> tuple[BacktestReport, BacktestReport]:
    """Backtest the returns as-is and through the gate, on the same dates.

    Returns (original, augmented); the augmented report counts Skip days.
    """
    gated = apply_gate(returns, gate)
    decisions = gate.by_date()
    n_skipped = sum(
        1 for d in returns.dates if decisions[d] is Decision.SKIP
    )
    original = _report(returns, initial, annualization, n_skipped=0)
    augmented = _report(gated, initial, annualization, n_skipped=n_skipped)
    return original, augmented
