"""Additive seasonal decomposition by centered moving averages.

observed = trend + seasonal + irregular. The trend is a centered moving
average over one period (for an even period, a 2xm average with
half-weight endpoints), so it is undefined on the first and last
floor(period/2) days. Seasonal figures are the per-period-index means of
the detrended series, centered to sum to zero, and repeat across the
series. The irregular is whatever remains.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO

import numpy as np

from .errors import DecompositionError
from .series import TopicSeries


@dataclass(frozen=True)
class DecomposedSeries:
    """Trend/seasonal/irregular components of a daily series.

    ``trend`` and ``irregular`` are NaN on the edge days where the moving
    average is undefined. ``figures`` holds the ``period`` centered
    seasonal values; ``seasonal`` is their repetition over the whole range.
    """

    observed: TopicSeries
    trend: np.ndarray
    seasonal: np.ndarray
    irregular: np.ndarray
    period: int

    @property
    def figures(self) -> np.ndarray:
        return self.seasonal[: self.period]


def _moving_average(x: np.ndarray, period: int) -> np.ndarray:
    """Centered moving average with NaN on the undefined edges."""
    n = len(x)
    if period % 2 == 1:
        filt = np.full(period, 1.0 / period)
    else:
        filt = np.concatenate(([0.5], np.ones(period - 1), [0.5])) / period
    core = np.convolve(x, filt, mode="valid")
    half = period // 2
    trend = np.full(n, np.nan)
    trend[half:n - half] = core
    return trend


def decompose_additive(s: TopicSeries, period: int = 7) -> DecomposedSeries:
    """Decompose a gap-free daily series with the classical four-step method.

    Requires period >= 2, length >= 2*period, and every day present (fill
    or trim beforehand; see :func:`couplekit.series.fill_gaps`).
    """
    if period < 2:
        raise DecompositionError(f"period must be >= 2, got {period}")
    n = len(s)
    if n < 2 * period:
        raise DecompositionError(f"series of {n} days is too short for period {period} "
                                 f"(need at least {2 * period})")
    if not s.present.all():
        gaps = int((~s.present).sum())
        raise DecompositionError(f"series has {gaps} not-present day(s) inside the window; "
                                 "fill or trim before decomposing")

    x = s.values.astype(float)
    trend = _moving_average(x, period)
    detrended = x - trend

    figures = np.empty(period)
    for k in range(period):
        vals = detrended[k::period]
        figures[k] = np.nanmean(vals)
    figures -= figures.mean()

    seasonal = np.tile(figures, n // period + 1)[:n]
    irregular = x - trend - seasonal
    return DecomposedSeries(observed=s, trend=trend, seasonal=seasonal,
                            irregular=irregular, period=period)


def seasonally_adjust(d: DecomposedSeries) -> TopicSeries:
    """Observed minus seasonal, with the present mask unchanged."""
    adjusted = d.observed.values - d.seasonal
    return replace(d.observed, values=adjusted)


def trend_series(d: DecomposedSeries) -> TopicSeries:
    """The trend as a series; NaN edges become not-present days."""
    defined = ~np.isnan(d.trend)
    values = np.where(defined, d.trend, 0.0)
    return replace(d.observed, values=values, present=d.observed.present & defined)


def write_components_csv(d: DecomposedSeries, target: str | Path | IO[str]) -> None:
    """Four-column export: date, trend, seasonal, irregular (empty = undefined)."""
    fh = open(target, "w", encoding="utf-8", newline="") if isinstance(target, (str, Path)) else target
    try:
        writer = csv.writer(fh)
        writer.writerow(["date", "trend", "seasonal", "irregular"])
        for day, t, se, irr in zip(d.observed.dates(), d.trend, d.seasonal, d.irregular):
            writer.writerow([
                day.isoformat(),
                "" if np.isnan(t) else repr(float(t)),
                repr(float(se)),
                "" if np.isnan(irr) else repr(float(irr)),
            ])
    finally:
        if isinstance(target, (str, Path)):
            fh.close()
