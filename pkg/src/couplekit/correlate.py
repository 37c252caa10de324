"""Lagged cross-correlation and delay detection between two daily series.

The correlation at lag h is the Pearson correlation between x shifted by h
days and y, computed over the days where both values exist: positive h
means x trails y, negative h means x runs ahead of y. Not-present days are
pairwise-deleted at each lag, and means/deviations are recomputed on each
lag's own overlap. The detected delay is the lag with the largest absolute
correlation, covering both strongly positive and strongly negative
coupling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CorrelationError, DegenerateSeriesError, InsufficientDataError

DEFAULT_MAX_LAG = 7
DEFAULT_MIN_OVERLAP = 8


@dataclass(frozen=True)
class CcfResult:
    """Correlation by lag over [-max_lag, +max_lag].

    Lags that failed the overlap or variance preconditions are absent from
    ``lags`` and recorded in ``skipped`` with the reason.
    """

    lags: tuple[int, ...]
    correlations: tuple[float, ...]
    n_overlap: tuple[int, ...]
    skipped: dict[int, str]

    def __len__(self) -> int:
        return len(self.lags)

    def correlation_at(self, lag: int) -> float:
        return self.correlations[self.lags.index(lag)]


@dataclass(frozen=True)
class LagResult:
    """The detected delay: lag of the peak absolute correlation."""

    delay: int
    peak_correlation: float
    sign: str            # "positive" | "negative"
    lead_lag_label: str  # "x_leads_y" | "x_lags_y" | "no_delay"


def _overlap_pairs(x: np.ndarray, y: np.ndarray, h: int) -> tuple[np.ndarray, np.ndarray]:
    """Paired samples (x[t+h], y[t]) restricted to jointly finite days."""
    n = len(x)
    if h >= 0:
        xs, ys = x[h:], y[: n - h]
    else:
        xs, ys = x[: n + h], y[-h:]
    keep = np.isfinite(xs) & np.isfinite(ys)
    return xs[keep], ys[keep]


def _pearson(xs: np.ndarray, ys: np.ndarray, h: int, min_overlap: int) -> float:
    n = len(xs)
    if n < max(min_overlap, 2):
        raise InsufficientDataError(f"only {n} jointly present day(s) at lag {h}, "
                                    f"need {max(min_overlap, 2)}")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = np.sqrt((dx * dx).mean())
    sy = np.sqrt((dy * dy).mean())
    if sx == 0.0 or sy == 0.0:
        raise DegenerateSeriesError(f"zero variance on the overlap at lag {h}")
    r = float((dx * dy).mean() / (sx * sy))
    return min(1.0, max(-1.0, r))


def _as_aligned(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise CorrelationError("series must be 1-d and aligned to a common calendar")
    return x, y


def cross_correlation(x: np.ndarray, y: np.ndarray, h: int, *,
                      min_overlap: int = DEFAULT_MIN_OVERLAP) -> float:
    """Pearson correlation between x[t+h] and y[t] on their joint overlap.

    ``x`` and ``y`` must be aligned to the same calendar; NaN marks
    not-present days. Raises :class:`InsufficientDataError` when fewer than
    ``min_overlap`` pairs remain and :class:`DegenerateSeriesError` when
    either side has zero variance on the overlap.
    """
    x, y = _as_aligned(x, y)
    if abs(h) >= len(x):
        raise InsufficientDataError(f"lag {h} leaves no overlap for length {len(x)}")
    xs, ys = _overlap_pairs(x, y, h)
    return _pearson(xs, ys, h, min_overlap)


def ccf(x: np.ndarray, y: np.ndarray, max_lag: int = DEFAULT_MAX_LAG, *,
        min_overlap: int = DEFAULT_MIN_OVERLAP) -> CcfResult:
    """The sample cross-correlation function over lags -max_lag..+max_lag."""
    if max_lag < 0:
        raise CorrelationError(f"max_lag must be >= 0, got {max_lag}")
    x, y = _as_aligned(x, y)
    lags, corrs, overlaps = [], [], []
    skipped: dict[int, str] = {}
    for h in range(-max_lag, max_lag + 1):
        if abs(h) >= len(x):
            skipped[h] = f"lag {h} leaves no overlap for length {len(x)}"
            continue
        xs, ys = _overlap_pairs(x, y, h)
        try:
            r = _pearson(xs, ys, h, min_overlap)
        except CorrelationError as exc:
            skipped[h] = str(exc)
            continue
        lags.append(h)
        corrs.append(r)
        overlaps.append(len(xs))
    if not lags:
        raise CorrelationError("no admissible lag: " + "; ".join(
            f"h={h}: {reason}" for h, reason in sorted(skipped.items())))
    return CcfResult(lags=tuple(lags), correlations=tuple(corrs),
                     n_overlap=tuple(overlaps), skipped=skipped)


def detect_delay(c: CcfResult) -> LagResult:
    """Delay per the argmax-of-|correlation| rule.

    Ties prefer the smallest |lag| and then a negative lag over a positive
    one, so the no-delay explanation wins whenever it is as good.
    """
    if len(c) == 0:
        raise CorrelationError("empty correlation table")
    best = min(zip(c.lags, c.correlations),
               key=lambda item: (-abs(item[1]), abs(item[0]), 0 if item[0] < 0 else 1))
    delay, peak = best
    if delay < 0:
        label = "x_leads_y"
    elif delay > 0:
        label = "x_lags_y"
    else:
        label = "no_delay"
    return LagResult(delay=delay, peak_correlation=peak,
                     sign="negative" if peak < 0 else "positive",
                     lead_lag_label=label)
