"""Daily topical time series built from categorized events.

Two strategies: "frequency" counts events of a category per day;
"percentage" divides that count by all events of the source that day.
Days where the source produced nothing are value 0 / present for
frequency, and not-present for percentage (the ratio is undefined).
"""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field, replace
from datetime import date, timedelta
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .errors import SeriesError, UnknownCategoryError

SOURCES = ("call", "social")
STRATEGIES = ("frequency", "percentage")


def date_range(start: date, end: date) -> list[date]:
    """Every calendar day from start to end inclusive."""
    if end < start:
        raise SeriesError(f"empty date range: {start} to {end}")
    return [start + timedelta(days=i) for i in range((end - start).days + 1)]


@dataclass
class DailyCounts:
    """Per-day event counts by category plus per-day totals for one source."""

    per_category: dict[str, Counter] = field(default_factory=dict)
    totals: Counter = field(default_factory=Counter)

    @classmethod
    def from_events(cls, events: Iterable[tuple[date, frozenset[str]]]) -> "DailyCounts":
        counts = cls()
        counts.extend(events)
        return counts

    def extend(self, events: Iterable[tuple[date, frozenset[str]]]) -> None:
        for day, categories in events:
            self.totals[day] += 1
            for cat in categories:
                self.per_category.setdefault(cat, Counter())[day] += 1

    def count(self, category: str, day: date) -> int:
        return self.per_category.get(category, _EMPTY).get(day, 0)

    def total(self, day: date) -> int:
        return self.totals.get(day, 0)

    @property
    def first_day(self) -> date | None:
        return min(self.totals) if self.totals else None

    @property
    def last_day(self) -> date | None:
        return max(self.totals) if self.totals else None

    def __len__(self) -> int:
        return sum(self.totals.values())


_EMPTY: Counter = Counter()


@dataclass(frozen=True)
class TopicSeries:
    """A date-indexed daily series for one (source, category, strategy).

    ``values`` and ``present`` are parallel arrays, one slot per calendar
    day starting at ``start_date``. Not-present days keep value 0.
    """

    source: str
    category: str
    strategy: str
    start_date: date
    values: np.ndarray
    present: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        object.__setattr__(self, "present", np.asarray(self.present, dtype=bool))
        if self.values.shape != self.present.shape or self.values.ndim != 1:
            raise SeriesError("values and present must be 1-d arrays of equal length")
        if len(self.values) == 0:
            raise SeriesError("series must cover at least one day")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end_date(self) -> date:
        return self.start_date + timedelta(days=len(self) - 1)

    def dates(self) -> list[date]:
        return date_range(self.start_date, self.end_date)

    def masked_values(self) -> np.ndarray:
        """Values with NaN on not-present days (for pairwise-deleting math)."""
        out = self.values.astype(float).copy()
        out[~self.present] = np.nan
        return out

    def slice(self, start: date, end: date) -> "TopicSeries":
        """Restrict to [start, end]; both bounds must lie inside the series."""
        if start < self.start_date or end > self.end_date or end < start:
            raise SeriesError(f"slice [{start}, {end}] outside series range "
                              f"[{self.start_date}, {self.end_date}]")
        i = (start - self.start_date).days
        j = (end - self.start_date).days + 1
        return replace(self, start_date=start, values=self.values[i:j].copy(),
                       present=self.present[i:j].copy())


def build_series(counts: DailyCounts, *, source: str, category: str, strategy: str,
                 start: date, end: date, known_categories: Iterable[str] | None = None) -> TopicSeries:
    """Build the daily series of one category over [start, end].

    Frequency: the raw event count per day. Percentage: count divided by
    the day's total events across the whole source; days with no events at
    all are marked not-present instead of recording a 0/0.
    """
    if source not in SOURCES:
        raise SeriesError(f"unknown source {source!r}; expected one of {SOURCES}")
    if strategy not in STRATEGIES:
        raise SeriesError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if end < start:
        raise SeriesError(f"empty date range: {start} to {end}")
    if known_categories is not None and category not in set(known_categories):
        raise UnknownCategoryError(f"unknown category {category!r}")

    days = date_range(start, end)
    cat_counts = np.array([counts.count(category, d) for d in days], dtype=float)
    if strategy == "frequency":
        return TopicSeries(source=source, category=category, strategy=strategy,
                           start_date=start, values=cat_counts,
                           present=np.ones(len(days), dtype=bool))
    totals = np.array([counts.total(d) for d in days], dtype=float)
    present = totals > 0
    values = np.zeros(len(days))
    np.divide(cat_counts, totals, out=values, where=present)
    return TopicSeries(source=source, category=category, strategy=strategy,
                       start_date=start, values=values, present=present)


def align(a: TopicSeries, b: TopicSeries) -> tuple[TopicSeries, TopicSeries]:
    """Trim both series to their common date range with a joint present mask."""
    start = max(a.start_date, b.start_date)
    end = min(a.end_date, b.end_date)
    if end < start:
        raise SeriesError(f"series ranges do not overlap: "
                          f"[{a.start_date}, {a.end_date}] vs [{b.start_date}, {b.end_date}]")
    a2, b2 = a.slice(start, end), b.slice(start, end)
    joint = a2.present & b2.present
    return (replace(a2, present=joint.copy()), replace(b2, present=joint.copy()))


def fill_gaps(s: TopicSeries, policy: str) -> TopicSeries:
    """Return a copy with not-present days filled and marked present.

    ``policy`` is "zero" or "linear". Linear interpolates between the
    nearest present neighbours and extends the edge values outward.
    """
    if policy not in ("zero", "linear"):
        raise SeriesError(f"unknown fill policy {policy!r}; expected zero or linear")
    if s.present.all():
        return s
    if not s.present.any():
        raise SeriesError("cannot fill a series with no present days")
    values = s.values.copy()
    missing = ~s.present
    if policy == "zero":
        values[missing] = 0.0
    else:
        idx = np.arange(len(values), dtype=float)
        values[missing] = np.interp(idx[missing], idx[s.present], values[s.present])
    return replace(s, values=values, present=np.ones(len(values), dtype=bool))


def write_series_csv(s: TopicSeries, target: str | Path | IO[str]) -> None:
    """Columnar text export: date, value, present flag (1/0)."""
    fh = open(target, "w", encoding="utf-8", newline="") if isinstance(target, (str, Path)) else target
    try:
        writer = csv.writer(fh)
        writer.writerow(["date", "value", "present"])
        integral = s.strategy == "frequency"
        for day, value, present in zip(s.dates(), s.values, s.present):
            out = int(value) if integral and float(value).is_integer() else float(value)
            writer.writerow([day.isoformat(), out, int(bool(present))])
    finally:
        if isinstance(target, (str, Path)):
            fh.close()


def read_series_csv(source: str | Path | IO[str], *, source_name: str = "call",
                    category: str = "other", strategy: str = "frequency") -> TopicSeries:
    """Read a series written by :func:`write_series_csv`."""
    fh = open(source, "r", encoding="utf-8", newline="") if isinstance(source, (str, Path)) else source
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:3]] != ["date", "value", "present"]:
            raise SeriesError("series file must start with a 'date,value,present' header")
        days, values, present = [], [], []
        for row in reader:
            if not row:
                continue
            days.append(date.fromisoformat(row[0]))
            values.append(float(row[1]))
            present.append(bool(int(row[2])))
    finally:
        if isinstance(source, (str, Path)):
            fh.close()
    if not days:
        raise SeriesError("series file has no data rows")
    expected = date_range(days[0], days[-1])
    if days != expected:
        raise SeriesError("series file must cover consecutive days")
    return TopicSeries(source=source_name, category=category, strategy=strategy,
                       start_date=days[0], values=np.array(values), present=np.array(present))
