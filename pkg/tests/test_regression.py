import math
import random

import numpy as np
import pytest

from vixgate import (
    DataError,
    DegenerateError,
    SeriesKind,
    effective_ratio,
    ols_slope,
    scan_windows,
)

from helpers import make_series, mp_ols_slope, rel_err


def test_exact_line():
    slope, n = ols_slope([(0, 0), (1, 2), (2, 4)])
    assert slope == 2.0
    assert n == 3


def test_constant_response_gives_zero_slope():
    slope, _ = ols_slope([(0, 5), (1, 5), (2, 5)])
    assert slope == 0.0


def test_constant_regressor_errors():
    with pytest.raises(DegenerateError, match="constant"):
        ols_slope([(1, 1), (1, 2), (1, 3)])


def test_single_pair_errors():
    with pytest.raises(DataError, match="at least 2"):
        ols_slope([(1, 1)])
    with pytest.raises(DataError):
        ols_slope([])


def test_malformed_pairs_rejected():
    with pytest.raises(ValueError):
        ols_slope([(1, 2, 3), (4, 5, 6)])


def test_intercept_is_absorbed():
    # shifting y by a constant leaves the slope alone
    base, _ = ols_slope([(0.0, 1.0), (1.0, 3.5), (2.0, 4.0)])
    shifted, _ = ols_slope([(0.0, 101.0), (1.0, 103.5), (2.0, 104.0)])
    assert shifted == pytest.approx(base, rel=1e-12)


def test_matches_extended_precision_oracle():
    rng = random.Random(21)
    pairs = [(rng.gauss(0, 1), rng.gauss(0, 0.02)) for _ in range(100)]
    slope, n = ols_slope(pairs)
    assert n == 100
    assert rel_err(slope, mp_ols_slope(pairs)) < 1e-10


def test_response_scaling_is_exact_for_powers_of_two():
    rng = random.Random(5)
    pairs = [(rng.uniform(-1, 1), rng.uniform(-0.05, 0.05)) for _ in range(50)]
    base, _ = ols_slope(pairs)
    doubled, _ = ols_slope([(x, 2.0 * y) for x, y in pairs])
    assert doubled == 2.0 * base


def test_sign_flip_negates_slope_exactly():
    rng = random.Random(9)
    pairs = [(rng.uniform(-1, 1), rng.uniform(-0.05, 0.05)) for _ in range(50)]
    pos, _ = ols_slope(pairs)
    neg, _ = ols_slope([(-x, y) for x, y in pairs])
    assert neg == -pos


def random_walk_vix(n, seed, sigma=0.05):
    rng = np.random.default_rng(seed)
    levels = 20.0 * np.exp(np.cumsum(rng.normal(0.0, sigma, size=n)))
    return make_series(levels, kind=SeriesKind.VIX_LEVEL)


def test_scan_singleton():
    vix = random_walk_vix(30, seed=1)
    returns = make_series(np.random.default_rng(2).normal(0, 0.01, size=30))
    res = scan_windows(vix, returns, window_min=1, window_max=1, signs=(1,))
    assert len(res.entries) == 1
    assert res.best == res.entries[0]
    assert res.best.window == 1
    assert res.best.sign == 1
    assert res.scan_range == (1, 1)


def test_scan_covers_every_window_and_sign():
    vix = random_walk_vix(60, seed=3)
    returns = make_series(np.random.default_rng(4).normal(0, 0.01, size=60))
    res = scan_windows(vix, returns, window_min=1, window_max=5)
    assert [(e.window, e.sign) for e in res.entries] == [
        (m, s) for m in range(1, 6) for s in (-1, 1)
    ]


def test_scan_sign_symmetry():
    vix = random_walk_vix(80, seed=7)
    returns = make_series(np.random.default_rng(8).normal(0, 0.01, size=80))
    res = scan_windows(vix, returns, window_min=1, window_max=6)
    by_key = {(e.window, e.sign): e.coefficient for e in res.entries}
    for m in range(1, 7):
        assert by_key[(m, -1)] == -by_key[(m, 1)]


def test_scan_matches_direct_slope():
    vix = random_walk_vix(100, seed=12)
    returns = make_series(np.random.default_rng(13).normal(0, 0.01, size=100))
    res = scan_windows(vix, returns, window_min=3, window_max=3, signs=(-1,))
    er = effective_ratio(vix, 3)
    ret_by_date = dict(zip(returns.dates, returns.values))
    pairs = [(-v, ret_by_date[d]) for d, v in er.present()]
    want, n = ols_slope(pairs)
    assert res.best.coefficient == want
    assert res.best.n_obs == n


def test_scan_validation():
    vix = random_walk_vix(30, seed=1)
    returns = make_series([0.01] * 30)
    with pytest.raises(ValueError, match="window_min"):
        scan_windows(vix, returns, window_min=0)
    with pytest.raises(ValueError, match="window_max"):
        scan_windows(vix, returns, window_min=5, window_max=4)
    with pytest.raises(ValueError, match="signs"):
        scan_windows(vix, returns, signs=(2,))
    with pytest.raises(ValueError, match="signs"):
        scan_windows(vix, returns, signs=())


def test_scan_marks_uncomputable_windows_with_reasons():
    # 6 observations: windows above 4 have no computable point
    vix = random_walk_vix(6, seed=5)
    returns = make_series(np.random.default_rng(6).normal(0, 0.01, size=6))
    res = scan_windows(vix, returns, window_min=1, window_max=8, signs=(-1,))
    by_window = {e.window: e for e in res.entries}
    assert by_window[1].coefficient is not None
    for m in range(5, 9):
        assert by_window[m].coefficient is None
        assert by_window[m].reason
        assert by_window[m].n_obs == 0
    assert res.best.window <= 4


def test_scan_marks_constant_signal_with_reason():
    # sawtooth: window-1 signal alternates +/-1, window-2 signal is
    # constant zero (flat net change), so only window 2 degenerates
    vix = make_series([1.0, 2.0] * 8, kind=SeriesKind.VIX_LEVEL)
    returns = make_series(np.random.default_rng(14).normal(0, 0.01, size=16))
    res = scan_windows(vix, returns, window_min=1, window_max=2, signs=(1,))
    by_window = {e.window: e for e in res.entries}
    assert by_window[1].coefficient is not None
    assert by_window[2].coefficient is None
    assert "constant" in by_window[2].reason
    assert res.best.window == 1


def test_scan_flat_signal_everywhere_errors():
    vix = make_series([20.0] * 10, kind=SeriesKind.VIX_LEVEL)
    returns = make_series(np.random.default_rng(14).normal(0, 0.01, size=10))
    with pytest.raises(DataError, match="no .window, sign."):
        scan_windows(vix, returns, window_min=1, window_max=2, signs=(1,))


def test_scan_all_windows_uncomputable_errors():
    vix = random_walk_vix(6, seed=5)
    returns = make_series(np.random.default_rng(6).normal(0, 0.01, size=6))
    with pytest.raises(DataError, match="no .window, sign."):
        scan_windows(vix, returns, window_min=10, window_max=12)


def test_tie_break_prefers_smaller_window_then_negative_sign():
    # constant returns at a power of two: the response mean is exact, the
    # residuals are exactly zero, and every slope ties at exactly 0.0
    vix = random_walk_vix(40, seed=17)
    returns = make_series([0.0078125] * 40)
    res = scan_windows(vix, returns, window_min=2, window_max=6)
    assert all(e.coefficient == 0.0 for e in res.entries)
    assert res.best.window == 2
    assert res.best.sign == -1


def test_generative_recovery():
    vix = random_walk_vix(1500, seed=42)
    er = effective_ratio(vix, 5)
    rng = np.random.default_rng(43)
    values = [
        0.1 * (0.0 - v) + rng.normal(0.0, 0.001) if v is not None
        else rng.normal(0.0, 0.001)
        for v in er.values
    ]
    returns = make_series(values)
    res = scan_windows(vix, returns, window_min=1, window_max=10)
    assert res.best.window == 5
    assert res.best.sign == -1
    assert 0.08 <= res.best.coefficient <= 0.12


def test_unrelated_series_scan_stays_near_zero():
    n = 5000
    vix = random_walk_vix(n, seed=101)
    rng = np.random.default_rng(202)
    ret_values = rng.normal(0.0, 0.01, size=n)
    returns = make_series(ret_values)
    res = scan_windows(vix, returns)
    er = effective_ratio(vix, res.best.window)
    er_values = np.array([v for _, v in er.present()])
    bound = 0.05 * float(np.std(ret_values)) / float(np.std(er_values))
    assert abs(res.best.coefficient) < bound
