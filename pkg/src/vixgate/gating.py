"""Daily trade/skip decisions from the thresholded trend signal, plus the
futures-basis convergence rule.

A day is skipped when the signed signal is at or above the threshold;
warm-up days carry no signal and trade as usual, so the gated strategy
never deviates from the original without evidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from enum import Enum

from .efficiency import ErSeries
from .series import DailySeries

__all__ = [
    "Decision",
    "GateSignal",
    "make_gate",
    "tune_threshold",
    "BasisAction",
    "BasisDecision",
    "basis_signal",
    "BASIS_CONVERGENCE_THRESHOLD",
]

# Minimum expected daily convergence, in index points, before the basis
# trade acts.
BASIS_CONVERGENCE_THRESHOLD = 0.1


class Decision(str, Enum):
    TRADE = "trade"
    SKIP = "skip"
    NO_SIGNAL = "nosignal"


@dataclass(frozen=True)
class GateSignal:
    """Per-date decisions plus the parameters that produced them."""

    dates: tuple[date, ...]
    decisions: tuple[Decision, ...]
    window: int
    sign: int
    threshold: float

    def __len__(self) -> int:
        return len(self.dates)

    def by_date(self) -> dict[date, Decision]:
        return dict(zip(self.dates, self.decisions))


def make_gate(er: ErSeries, sign: int, threshold: float = 0.1) -> GateSignal:
    """Threshold the signed signal into Trade/Skip/NoSignal decisions.

    Skip when ``sign * value >= threshold`` (inclusive); warm-up dates get
    NoSignal. The threshold is in raw signal units, so it must lie in
    (0, 1].
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign!r}")
    if not (0.0 < threshold <= 1.0):
        raise ValueError(
            f"threshold must lie in (0, 1] (raw signal units), got {threshold!r}"
        )
    decisions = tuple(
        Decision.NO_SIGNAL
        if v is None
        else (Decision.SKIP if sign * v >= threshold else Decision.TRADE)
        for v in er.values
    )
    return GateSignal(er.dates, decisions, er.window, sign, threshold)


def tune_threshold(
    er: ErSeries,
    returns: DailySeries,
    sign: int,
    candidates: list[float],
    initial: float = 5.0,
    annualization: int = 252,
):
    """Pick the Sharpe-maximizing threshold from ``candidates``.

    Each candidate is backtested through the gate; ties prefer the larger
    threshold (gate less often). Returns ``(best, evaluations)`` where
    evaluations is a list of (threshold, augmented report) in ascending
    threshold order.
    """
    from .metrics import compare  # circular at module level

    if not candidates:
        raise ValueError("candidates must be nonempty")
    for theta in candidates:
        if not (0.0 < theta <= 1.0):
            raise ValueError(f"candidate threshold {theta!r} outside (0, 1]")
    evaluations = []
    for theta in sorted(set(candidates)):
        gate = make_gate(er, sign, theta)
        _, augmented = compare(returns, gate, initial, annualization)
        evaluations.append((theta, augmented))
    best = max(evaluations, key=lambda pair: (pair[1].sharpe, pair[0]))
    return best[0], evaluations


class BasisAction(str, Enum):
    SHORT_FUTURE = "short_future"
    BUY_FUTURE = "buy_future"
    NO_TRADE = "no_trade"


@dataclass(frozen=True)
class BasisDecision:
    action: BasisAction
    front_future: float
    cash_vix: float
    expected_daily_convergence: float


def basis_signal(
    front_future: float, cash_vix: float, expected_daily_convergence: float
) -> BasisDecision:
    """Futures-basis rule: short a rich future, buy a cheap one, but only
    when the expected daily convergence exceeds 0.1 index points."""
    for name, value in (
        ("front_future", front_future),
        ("cash_vix", cash_vix),
        ("expected_daily_convergence", expected_daily_convergence),
    ):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    if cash_vix <= 0:
        raise ValueError(f"cash_vix must be positive, got {cash_vix!r}")
    if expected_daily_convergence > BASIS_CONVERGENCE_THRESHOLD:
        if front_future > cash_vix:
            action = BasisAction.SHORT_FUTURE
        elif front_future < cash_vix:
            action = BasisAction.BUY_FUTURE
        else:
            action = BasisAction.NO_TRADE
    else:
        action = BasisAction.NO_TRADE
    return BasisDecision(
        action, front_future, cash_vix, expected_daily_convergence
    )
