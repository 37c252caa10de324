"""Symbolic trend representation: weekly aggregation, PAA, and SAX.

A series is z-normalized, reduced to segment means (piecewise aggregate
approximation), and each mean is mapped to a letter through breakpoints
that split the standard normal into equal-probability regions. The
resulting words support a distance that never exceeds the Euclidean
distance between the z-normalized originals, and give a compact way to
compare the weekly trends of two sources.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import SymbolicError
from .series import TopicSeries, align

DEGENERATE_STD = 1e-9
DEFAULT_ALPHABET_SIZE = 5
DEFAULT_TREND_THRESHOLD = 0.3
_LETTERS = "abcdefghijklmnopqrstuvwxyz"

LABEL_POSITIVE = "positively_correlated"
LABEL_NEGATIVE = "negatively_correlated"
LABEL_UNCORRELATED = "uncorrelated"


@dataclass(frozen=True)
class SaxWord:
    """A symbolic word plus everything needed to compare or invert it."""

    symbols: tuple[int, ...]
    alphabet_size: int
    word_length: int
    breakpoints: tuple[float, ...]
    source_mean: float
    source_std: float

    @property
    def letters(self) -> str:
        return "".join(_LETTERS[i] for i in self.symbols)

    @property
    def degenerate(self) -> bool:
        return self.source_std < DEGENERATE_STD


@dataclass(frozen=True)
class TrendComparison:
    """Pearson correlation of two symbol-index sequences, thresholded."""

    pearson_on_indices: float
    label: str
    note: str | None = None


def breakpoints(alphabet_size: int) -> np.ndarray:
    """Standard-normal quantiles at k/a for k = 1..a-1 (equiprobable regions)."""
    if alphabet_size <= 2:
        raise SymbolicError(f"alphabet size must be > 2, got {alphabet_size}")
    if alphabet_size > len(_LETTERS):
        raise SymbolicError(f"alphabet size must be <= {len(_LETTERS)}")
    return norm.ppf(np.arange(1, alphabet_size) / alphabet_size)


def znormalize(x: np.ndarray) -> tuple[np.ndarray, float, float]:
    """(z-scored values, mean, population std); flat input comes back as zeros."""
    x = np.asarray(x, dtype=float)
    mean = float(x.mean())
    std = float(x.std())
    if std < DEGENERATE_STD:
        return np.zeros_like(x), mean, std
    return (x - mean) / std, mean, std


def paa(x: np.ndarray, word_length: int) -> np.ndarray:
    """Segment means over ``word_length`` equal-mass segments.

    When the length is not a multiple of ``word_length``, boundary points
    contribute fractionally to both neighbouring segments so every segment
    covers exactly n/w of the series.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    if word_length < 1:
        raise SymbolicError(f"word length must be >= 1, got {word_length}")
    if word_length > n:
        raise SymbolicError(f"word length {word_length} exceeds series length {n}")
    if n % word_length == 0:
        return x.reshape(word_length, n // word_length).mean(axis=1)
    seg = n / word_length
    out = np.empty(word_length)
    for i in range(word_length):
        lo, hi = i * seg, (i + 1) * seg
        total = 0.0
        for j in range(int(lo), min(int(np.ceil(hi)), n)):
            weight = min(hi, j + 1) - max(lo, j)
            if weight > 0:
                total += weight * x[j]
        out[i] = total / seg
    return out


def sax(x: np.ndarray, word_length: int, alphabet_size: int = DEFAULT_ALPHABET_SIZE) -> SaxWord:
    """Transform a series into a symbolic word.

    The series is z-normalized (mean and std are recorded on the word),
    PAA-reduced, and each coefficient mapped to its breakpoint region. A
    flat series (std below 1e-9) maps to the middle symbol repeated, so
    downstream comparison can proceed instead of erroring.
    """
    bps = breakpoints(alphabet_size)
    x = np.asarray(x, dtype=float)
    if word_length > len(x):
        raise SymbolicError(f"word length {word_length} exceeds series length {len(x)}")
    z, mean, std = znormalize(x)
    if std < DEGENERATE_STD:
        symbols = tuple([alphabet_size // 2] * word_length)
    else:
        coeffs = paa(z, word_length)
        symbols = tuple(int(s) for s in np.searchsorted(bps, coeffs, side="right"))
    return SaxWord(symbols=symbols, alphabet_size=alphabet_size, word_length=word_length,
                   breakpoints=tuple(float(b) for b in bps), source_mean=mean, source_std=std)


def mindist(w1: SaxWord, w2: SaxWord, n: int) -> float:
    """Symbol-space distance that lower-bounds the Euclidean distance
    between the two z-normalized originals of length ``n``.

    Adjacent or equal symbols contribute nothing; otherwise the cell value
    is the gap between the breakpoint regions.
    """
    if (w1.word_length != w2.word_length or w1.alphabet_size != w2.alphabet_size):
        raise SymbolicError("words must share word length and alphabet size")
    if n < w1.word_length:
        raise SymbolicError(f"original length {n} smaller than word length {w1.word_length}")
    bps = w1.breakpoints
    total = 0.0
    for r, c in zip(w1.symbols, w2.symbols):
        if abs(r - c) <= 1:
            continue
        cell = bps[max(r, c) - 1] - bps[min(r, c)]
        total += cell * cell
    return float(np.sqrt(n / w1.word_length) * np.sqrt(total))


def weekly_aggregate(s: TopicSeries) -> np.ndarray:
    """One value per ISO week: the mean of that week's present days.

    Weeks without any present day are dropped; a series with no present
    days at all is an error.
    """
    return np.array([v for _, v in weekly_buckets(s)])


def weekly_buckets(s: TopicSeries) -> list[tuple[str, float]]:
    """Chronological ("YYYY-Www", mean) pairs over the series' ISO weeks."""
    sums: dict[tuple[int, int], list[float]] = {}
    order: list[tuple[int, int]] = []
    for day, value, present in zip(s.dates(), s.values, s.present):
        iso = day.isocalendar()
        key = (iso[0], iso[1])
        if key not in sums:
            sums[key] = []
            order.append(key)
        if present:
            sums[key].append(float(value))
    buckets = [(f"{y}-W{w:02d}", float(np.mean(vals)))
               for (y, w) in order if (vals := sums[(y, w)])]
    if not buckets:
        raise SymbolicError("no present days to aggregate")
    return buckets


def _index_pearson(a: tuple[int, ...], b: tuple[int, ...]) -> float | None:
    """Pearson of two symbol-index sequences, or None when undefined."""
    xa = np.asarray(a, dtype=float)
    xb = np.asarray(b, dtype=float)
    if len(xa) < 2 or xa.std() == 0.0 or xb.std() == 0.0:
        return None
    r = float(np.corrcoef(xa, xb)[0, 1])
    return min(1.0, max(-1.0, r))


def compare_trends(a: TopicSeries, b: TopicSeries, word_length: int | None = None,
                   alphabet_size: int = DEFAULT_ALPHABET_SIZE,
                   threshold: float = DEFAULT_TREND_THRESHOLD) -> TrendComparison:
    """Weekly-aggregate both series, SAX them identically, and correlate
    the two symbol-index sequences."""
    _, _, comparison = trend_report(a, b, word_length=word_length,
                                    alphabet_size=alphabet_size, threshold=threshold)
    return comparison


def trend_report(a: TopicSeries, b: TopicSeries, word_length: int | None = None,
                 alphabet_size: int = DEFAULT_ALPHABET_SIZE,
                 threshold: float = DEFAULT_TREND_THRESHOLD,
                 ) -> tuple[SaxWord, SaxWord, TrendComparison]:
    """Both SAX words plus their trend comparison, on aligned weekly data."""
    a2, b2 = align(a, b)
    weekly_a = weekly_aggregate(a2)
    weekly_b = weekly_aggregate(b2)
    if len(weekly_a) != len(weekly_b):
        raise SymbolicError("weekly aggregation produced mismatched weeks")
    if word_length is None:
        word_length = len(weekly_a)
    if len(weekly_a) < 2:
        raise SymbolicError(f"need at least 2 weeks to compare trends, got {len(weekly_a)}")
    word_a = sax(weekly_a, word_length, alphabet_size)
    word_b = sax(weekly_b, word_length, alphabet_size)

    if word_a.degenerate or word_b.degenerate:
        flat = " and ".join(name for name, w in (("first", word_a), ("second", word_b))
                            if w.degenerate)
        return word_a, word_b, TrendComparison(
            pearson_on_indices=0.0, label=LABEL_UNCORRELATED,
            note=f"{flat} series is flat over the window")
    r = _index_pearson(word_a.symbols, word_b.symbols)
    if r is None:
        return word_a, word_b, TrendComparison(
            pearson_on_indices=0.0, label=LABEL_UNCORRELATED,
            note="constant symbol sequence; correlation undefined")
    if r >= threshold:
        label = LABEL_POSITIVE
    elif r <= -threshold:
        label = LABEL_NEGATIVE
    else:
        label = LABEL_UNCORRELATED
    return word_a, word_b, TrendComparison(pearson_on_indices=r, label=label)
