"""Volatility-trend gating for daily trading strategies.

The pipeline: compute a volatility index from an option strip (or load
one), measure its trend with a bounded net-over-gross ratio, calibrate
the trend window and orientation by regressing strategy returns on the
signed ratio, then skip trading on days the signal marks as poor and
compare Sharpe, max drawdown, and Calmar before and after.

Use the functional modules directly, the :class:`VixTrendGate` estimator
for a fit/predict workflow, or the ``vixgate`` command line tool.
"""
from .efficiency import ErSeries, effective_ratio, negate
from .errors import DataError, DegenerateError, VixgateError
from .estimator import VixTrendGate
from .gating import (
    BASIS_CONVERGENCE_THRESHOLD,
    BasisAction,
    BasisDecision,
    Decision,
    GateSignal,
    basis_signal,
    make_gate,
    tune_threshold,
)
from .metrics import (
    TRADING_DAYS_PER_YEAR,
    BacktestReport,
    annualized_return,
    apply_gate,
    calmar_ratio,
    compare,
    equity_curve,
    max_drawdown,
    sharpe_ratio,
)
from .options import OptionChain, OptionQuote, OptionSide, load_option_chain
from .regression import ScanEntry, ScanResult, ols_slope, scan_windows
from .series import (
    DailySeries,
    SeriesKind,
    align,
    load_daily_series,
    write_daily_series,
)
from .vix import StripStrike, VixComputation, compute_vix, forward_price

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BASIS_CONVERGENCE_THRESHOLD",
    "TRADING_DAYS_PER_YEAR",
    "BacktestReport",
    "BasisAction",
    "BasisDecision",
    "DailySeries",
    "DataError",
    "Decision",
    "DegenerateError",
    "ErSeries",
    "GateSignal",
    "OptionChain",
    "OptionQuote",
    "OptionSide",
    "ScanEntry",
    "ScanResult",
    "SeriesKind",
    "StripStrike",
    "VixComputation",
    "VixTrendGate",
    "VixgateError",
    "align",
    "annualized_return",
    "apply_gate",
    "basis_signal",
    "calmar_ratio",
    "compare",
    "compute_vix",
    "effective_ratio",
    "equity_curve",
    "forward_price",
    "load_daily_series",
    "load_option_chain",
    "make_gate",
    "max_drawdown",
    "negate",
    "ols_slope",
    "scan_windows",
    "sharpe_ratio",
    "tune_threshold",
    "write_daily_series",
]
