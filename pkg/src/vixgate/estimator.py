"""Scikit-learn style wrapper around the calibrate-then-gate pipeline.

The underlying modules work on dated series; this wrapper accepts plain
1-d arrays as well, assigning synthetic consecutive dates so positional
data can flow through the same date-aligned machinery.
"""
from __future__ import annotations

import datetime as dt

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .efficiency import effective_ratio
from .gating import make_gate, tune_threshold
from .metrics import TRADING_DAYS_PER_YEAR, compare
from .regression import scan_windows
from .series import DailySeries, SeriesKind

__all__ = ["VixTrendGate"]

_EPOCH = dt.date(2000, 1, 3)


def _as_series(X, kind: SeriesKind) -> DailySeries:
    if isinstance(X, DailySeries):
        return X
    values = np.asarray(X, dtype=float)
    if values.ndim == 2 and values.shape[1] == 1:
        values = values[:, 0]
    if values.ndim != 1:
        raise ValueError(f"expected a 1-d sequence, got shape {values.shape}")
    dates = tuple(_EPOCH + dt.timedelta(days=i) for i in range(len(values)))
    return DailySeries(dates, tuple(float(v) for v in values), kind)


class VixTrendGate(BaseEstimator):
    """Gate a daily strategy on the trend of a volatility index.

    fit() calibrates the trend lookback and sign by regressing strategy
    returns on the signed trend ratio, picking the window with the largest
    coefficient. predict() then labels each day trade/skip/nosignal and
    score() reports the annualized Sharpe of the gated returns.

    Parameters
    ----------
    window : int or None
        Trend lookback in days. None means calibrate from data in fit().
    sign : {-1, 1} or None
        Orientation applied to the trend ratio before thresholding.
        None means calibrate alongside the window.
    threshold : float
        Skip when the signed ratio is at or above this value, in (0, 1].
    window_range : tuple of (int, int)
        Inclusive window scan range used when calibrating.
    thresholds : sequence of float or None
        Candidate thresholds to tune by gated Sharpe. None keeps
        ``threshold`` as given.
    annualization : int
        Trading days per year for the Sharpe calculation.
    """

    def __init__(
        self,
        window: int | None = None,
        sign: int | None = None,
        threshold: float = 0.1,
        window_range: tuple[int, int] = (1, 20),
        thresholds=None,
        annualization: int = TRADING_DAYS_PER_YEAR,
    ):
        self.window = window
        self.sign = sign
        self.threshold = threshold
        self.window_range = window_range
        self.thresholds = thresholds
        self.annualization = annualization

    def fit(self, X, y=None):
        """Calibrate window, sign, and optionally the threshold.

        Parameters
        ----------
        X : DailySeries or 1-d array-like
            Volatility index levels.
        y : DailySeries or 1-d array-like, optional
            Daily strategy returns. Required unless both ``window`` and
            ``sign`` are fixed and ``thresholds`` is None.
        """
        vix = _as_series(X, SeriesKind.VIX_LEVEL)
        needs_returns = (
            self.window is None or self.sign is None or self.thresholds is not None
        )
        if needs_returns and y is None:
            raise ValueError("y (strategy returns) is required to calibrate")
        if self.sign is not None and self.sign not in (-1, 1):
            raise ValueError(f"sign must be -1 or +1, got {self.sign!r}")
        returns = None
        if y is not None:
            returns = _as_series(y, SeriesKind.RETURN)
            _check_matching_arrays(X, y, vix, returns)

        self.scan_result_ = None
        self.coefficient_ = None
        if self.window is None or self.sign is None:
            lo, hi = self.window_range
            # The regression regressor is sign_r * e; a positive coefficient
            # means poor days sit where sign_r * e is most negative, so the
            # gate orientation is the negation of the winning regressor sign.
            scan_signs = (-1, 1) if self.sign is None else (-self.sign,)
            windows = (
                (self.window, self.window) if self.window is not None else (lo, hi)
            )
            self.scan_result_ = scan_windows(
                vix, returns, window_min=windows[0], window_max=windows[1],
                signs=scan_signs,
            )
            best = self.scan_result_.best
            self.window_ = best.window
            self.sign_ = -best.sign
            self.coefficient_ = best.coefficient
        else:
            self.window_ = int(self.window)
            self.sign_ = int(self.sign)

        if self.thresholds is not None:
            er = effective_ratio(vix, self.window_)
            self.threshold_, _ = tune_threshold(
                er, returns, self.sign_, self.thresholds,
                annualization=self.annualization,
            )
        else:
            self.threshold_ = float(self.threshold)
        return self

    def transform(self, X) -> np.ndarray:
        """Signed trend ratio per input day; warm-up positions are NaN."""
        check_is_fitted(self, "window_")
        vix = _as_series(X, SeriesKind.VIX_LEVEL)
        er = effective_ratio(vix, self.window_)
        return np.array(
            [np.nan if v is None else self.sign_ * v for v in er.values]
        )

    def predict(self, X) -> np.ndarray:
        """Per-day decision labels: "trade", "skip", or "nosignal"."""
        check_is_fitted(self, "window_")
        vix = _as_series(X, SeriesKind.VIX_LEVEL)
        er = effective_ratio(vix, self.window_)
        gate = make_gate(er, self.sign_, self.threshold_)
        return np.array([d.value for d in gate.decisions])

    def score(self, X, y) -> float:
        """Annualized Sharpe ratio of the gated returns."""
        check_is_fitted(self, "window_")
        vix = _as_series(X, SeriesKind.VIX_LEVEL)
        returns = _as_series(y, SeriesKind.RETURN)
        _check_matching_arrays(X, y, vix, returns)
        er = effective_ratio(vix, self.window_)
        gate = make_gate(er, self.sign_, self.threshold_)
        _, augmented = compare(
            returns, gate, annualization=self.annualization
        )
        return augmented.sharpe


def _check_matching_arrays(X, y, vix: DailySeries, returns: DailySeries) -> None:
    """Positional inputs pair by index, so their lengths must agree."""
    if isinstance(X, DailySeries) or isinstance(y, DailySeries):
        return
    if len(vix) != len(returns):
        raise ValueError(
            f"X and y must have equal length, got {len(vix)} and {len(returns)}"
        )
