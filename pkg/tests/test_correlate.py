"""Cross-correlation identities, lag tables, and delay detection."""
from __future__ import annotations

import math

import numpy as np
import pytest

from couplekit.correlate import (CcfResult, ccf, cross_correlation, detect_delay)
from couplekit.errors import (CorrelationError, DegenerateSeriesError,
                              InsufficientDataError)


def brute_pearson(pairs):
    """Textbook Pearson over explicit (x, y) pairs."""
    n = len(pairs)
    mx = sum(p[0] for p in pairs) / n
    my = sum(p[1] for p in pairs) / n
    cov = sum((p[0] - mx) * (p[1] - my) for p in pairs) / n
    sx = math.sqrt(sum((p[0] - mx) ** 2 for p in pairs) / n)
    sy = math.sqrt(sum((p[1] - my) ** 2 for p in pairs) / n)
    return cov / (sx * sy)


def test_self_correlation_is_one():
    x = np.array([3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0])
    assert cross_correlation(x, x, 0, min_overlap=2) == pytest.approx(1.0, abs=1e-12)


def test_negation_gives_minus_one():
    x = np.array([3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0])
    assert cross_correlation(x, -x, 0, min_overlap=2) == pytest.approx(-1.0, abs=1e-12)


def test_hand_computed_shift_example():
    # y is x delayed by two days; the 4-point overlap at h=-2 matches exactly
    x = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    y = np.array([np.nan, np.nan, 1.0, 2.0, 3.0, 4.0])
    r = cross_correlation(x, y, -2, min_overlap=4)
    assert r == pytest.approx(1.0, abs=1e-12)
    # brute force on the explicit pairs (x[t-2], y[t]) for t = 2..5
    pairs = [(x[t - 2], y[t]) for t in range(2, 6)]
    assert r == pytest.approx(brute_pearson(pairs), abs=1e-12)


def test_general_value_against_brute_force():
    rng = np.random.default_rng(5)
    x = rng.normal(size=40)
    y = rng.normal(size=40)
    for h in (-3, 0, 4):
        pairs = [(x[t + h], y[t]) for t in range(40) if 0 <= t + h < 40]
        assert cross_correlation(x, y, h) == pytest.approx(brute_pearson(pairs), abs=1e-12)


def test_exact_shift_recovered_in_table():
    rng = np.random.default_rng(8)
    x = rng.normal(size=120)
    y = np.full(120, np.nan)
    y[3:] = x[:-3]  # y_t = x_{t-3}
    table = ccf(x, y, 7)
    assert table.correlation_at(-3) == pytest.approx(1.0, abs=1e-12)
    best = detect_delay(table)
    assert best.delay == -3 and best.lead_lag_label == "x_leads_y"


def test_autocase_symmetric_table():
    rng = np.random.default_rng(9)
    x = rng.normal(size=60)
    table = ccf(x, x, 2, min_overlap=8)
    assert table.correlation_at(0) == 1.0
    for h in (1, 2):
        assert table.correlation_at(h) == pytest.approx(table.correlation_at(-h), abs=1e-12)


def test_white_noise_pairs_stay_below_quarter():
    wins = 0
    trials = 40
    for seed in range(trials):
        rng = np.random.default_rng(1000 + seed)
        x = rng.normal(size=200)
        y = rng.normal(size=200)
        table = ccf(x, y, 7)
        if max(abs(r) for r in table.correlations) < 0.25:
            wins += 1
    assert wins >= math.ceil(0.95 * trials)


def test_antisymmetry_with_masks():
    rng = np.random.default_rng(21)
    for _ in range(25):
        x = rng.normal(size=80)
        y = rng.normal(size=80)
        x[rng.integers(0, 80, 6)] = np.nan
        y[rng.integers(0, 80, 6)] = np.nan
        fwd = ccf(x, y, 5, min_overlap=8)
        rev = ccf(y, x, 5, min_overlap=8)
        for h, r in zip(fwd.lags, fwd.correlations):
            assert r == pytest.approx(rev.correlation_at(-h), abs=1e-12)


def test_affine_invariance_and_sign_flip():
    rng = np.random.default_rng(23)
    x = rng.normal(size=90)
    y = rng.normal(size=90)
    base = ccf(x, y, 7)
    scaled = ccf(3.5 * x + 11.0, y, 7)
    for r1, r2 in zip(base.correlations, scaled.correlations):
        assert r1 == pytest.approx(r2, abs=1e-9)
    flipped = ccf(-2.0 * x + 4.0, y, 7)
    for r1, r2 in zip(base.correlations, flipped.correlations):
        assert r1 == pytest.approx(-r2, abs=1e-9)


def test_delay_recovery_under_noise():
    # y trails x by d days, so the delayed series passed as the x-argument
    # puts the peak at +d
    trials_per_d = 20
    for d in range(6):
        hits = 0
        for seed in range(trials_per_d):
            rng = np.random.default_rng(d * 1000 + seed)
            x = rng.normal(size=365)
            y = np.full(365, np.nan)
            if d:
                y[d:] = x[:-d]
            else:
                y[:] = x
            y = y + rng.normal(0, 0.1, 365) * np.nanstd(x)
            res = detect_delay(ccf(y, x, 7))
            if res.delay == d and res.sign == "positive":
                hits += 1
        assert hits >= math.ceil(0.95 * trials_per_d)


def test_argmax_invariant_under_positive_rescaling():
    rng = np.random.default_rng(29)
    x = rng.normal(size=150)
    y = np.r_[np.full(2, np.nan), x[:-2]] + rng.normal(0, 0.05, 150)
    before = detect_delay(ccf(x, y, 7)).delay
    after = detect_delay(ccf(0.01 * x + 5, 40 * y - 3, 7)).delay
    assert before == after


def test_tie_breaks_prefer_no_delay_then_negative():
    table = CcfResult(lags=(-1, 0, 1), correlations=(0.5, 0.5, 0.5),
                      n_overlap=(10, 10, 10), skipped={})
    assert detect_delay(table).delay == 0
    assert detect_delay(table).lead_lag_label == "no_delay"
    table2 = CcfResult(lags=(-2, 2), correlations=(-0.5, 0.5),
                       n_overlap=(10, 10), skipped={})
    assert detect_delay(table2).delay == -2
    assert detect_delay(table2).sign == "negative"


def test_singleton_table():
    table = CcfResult(lags=(0,), correlations=(0.3,), n_overlap=(12,), skipped={})
    res = detect_delay(table)
    assert res.delay == 0 and res.lead_lag_label == "no_delay"
    assert res.peak_correlation == 0.3 and res.sign == "positive"


def test_reported_value_shapes():
    # a clear peak at lag 0 with positive sign, like 0.86 at h=0
    table = CcfResult(lags=(-1, 0, 1), correlations=(0.2, 0.86, 0.1),
                      n_overlap=(10, 11, 10), skipped={})
    res = detect_delay(table)
    assert (res.delay, res.sign, res.lead_lag_label) == (0, "positive", "no_delay")
    # a negative peak away from zero, like -0.44 at a one-day lag
    table2 = CcfResult(lags=(-1, 0, 1), correlations=(0.1, 0.2, -0.44),
                       n_overlap=(10, 11, 10), skipped={})
    res2 = detect_delay(table2)
    assert (res2.delay, res2.sign) == (1, "negative")
    assert abs(res2.peak_correlation) == max(abs(r) for r in table2.correlations)


def test_insufficient_overlap_raises():
    x = np.arange(10.0)
    with pytest.raises(InsufficientDataError):
        cross_correlation(x, x, 5, min_overlap=8)


def test_degenerate_variance_raises():
    x = np.ones(30)
    y = np.arange(30.0)
    with pytest.raises(DegenerateSeriesError):
        cross_correlation(x, y, 0, min_overlap=8)


def test_lags_beyond_length_are_skipped_with_reason():
    x = np.arange(30.0)
    y = np.sin(np.arange(30.0))
    table = ccf(x, y, 7, min_overlap=25)
    assert set(table.lags) == {-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5}
    assert set(table.skipped) == {-7, -6, 6, 7}
    assert "jointly present" in table.skipped[7]


def test_no_admissible_lag_errors():
    x = np.arange(5.0)
    with pytest.raises(CorrelationError):
        ccf(x, x, 2, min_overlap=10)


def test_correlations_clipped_into_unit_interval():
    rng = np.random.default_rng(31)
    for _ in range(100):
        x = rng.normal(size=50)
        y = rng.normal(size=50)
        table = ccf(x, y, 5)
        assert all(-1.0 <= r <= 1.0 for r in table.correlations)
