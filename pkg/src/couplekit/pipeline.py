"""Shared analysis core behind the CLI and the HTTP service.

Every user-facing result is a plain JSON-ready dict built here, so the two
front ends cannot drift apart numerically. The correlation orientation is
fixed throughout: x is the call series and y is the social series, so a
positive detected delay means calls trail posts (posts lead).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date

import numpy as np

from .cache import Dataset
from .config import Defaults
from .correlate import ccf, detect_delay
from .decompose import decompose_additive, seasonally_adjust, trend_series
from .errors import CouplekitError, UnknownCategoryError
from .series import SOURCES, STRATEGIES, TopicSeries, align, build_series, fill_gaps
from .symbolic import trend_report, weekly_buckets

PREPROCESSINGS = ("raw", "adjusted", "trend")
FILL_POLICIES = (None, "zero", "linear")

ORIENTATION = {
    "x": "call",
    "y": "social",
    "note": "positive lag: call activity trails social activity (social leads)",
}


class ValidationError(CouplekitError):
    """Malformed analysis parameters (bad dates, ranges, enum values)."""


@dataclass(frozen=True)
class AnalysisRequest:
    """Effective parameters of one analysis call, after defaulting."""

    category: str
    strategy: str = "frequency"
    preprocessing: str = "adjusted"
    start: date | None = None
    end: date | None = None
    max_lag: int = 7
    min_overlap: int = 8
    word_length: int | None = None
    alphabet_size: int = 5
    trend_threshold: float = 0.3
    period: int = 7
    fill: str | None = None
    source: str = "call"

    @classmethod
    def from_defaults(cls, defaults: Defaults, **kwargs) -> "AnalysisRequest":
        base = dict(
            strategy="frequency",
            preprocessing=defaults.preprocessing,
            max_lag=defaults.max_lag,
            min_overlap=defaults.min_overlap,
            alphabet_size=defaults.alphabet_size,
            word_length=defaults.word_length,
            trend_threshold=defaults.trend_threshold,
            period=defaults.period,
        )
        base.update({k: v for k, v in kwargs.items() if v is not None})
        return cls(**base)


def parse_iso_date(value: str, name: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ValidationError(f"{name} must be an ISO date (YYYY-MM-DD), got {value!r}") from None


def _validate(req: AnalysisRequest, dataset: Dataset) -> None:
    if req.source not in SOURCES:
        raise ValidationError(f"source must be one of {SOURCES}, got {req.source!r}")
    if req.strategy not in STRATEGIES:
        raise ValidationError(f"strategy must be one of {STRATEGIES}, got {req.strategy!r}")
    if req.preprocessing not in PREPROCESSINGS:
        raise ValidationError(f"preprocessing must be one of {PREPROCESSINGS}, "
                              f"got {req.preprocessing!r}")
    if req.fill not in FILL_POLICIES:
        raise ValidationError(f"fill must be zero or linear, got {req.fill!r}")
    if req.start is not None and req.end is not None and req.end < req.start:
        raise ValidationError(f"from must be <= to, got {req.start} > {req.end}")
    if req.max_lag < 0:
        raise ValidationError(f"max_lag must be >= 0, got {req.max_lag}")
    if req.min_overlap < 2:
        raise ValidationError(f"min_overlap must be >= 2, got {req.min_overlap}")
    if req.period < 2:
        raise ValidationError(f"period must be >= 2, got {req.period}")
    if req.word_length is not None and req.word_length < 1:
        raise ValidationError(f"word_length must be >= 1, got {req.word_length}")
    if not 2 < req.alphabet_size <= 26:
        raise ValidationError(f"alphabet_size must be in 3..26, got {req.alphabet_size}")
    if req.category not in dataset.categories:
        raise UnknownCategoryError(
            f"unknown category {req.category!r}; known: {', '.join(dataset.categories)}")


def _window(req: AnalysisRequest, dataset: Dataset, *, joint: bool) -> tuple[date, date]:
    default_start, default_end = (dataset.joint_range() if joint
                                  else dataset.default_range(req.source))
    start = req.start or default_start
    end = req.end or default_end
    if end < start:
        raise ValidationError(f"from must be <= to, got {start} > {end}")
    return start, end


def _build(req: AnalysisRequest, dataset: Dataset, source: str,
           start: date, end: date) -> TopicSeries:
    return build_series(dataset.counts_for(source), source=source, category=req.category,
                        strategy=req.strategy, start=start, end=end,
                        known_categories=dataset.categories)


def _preprocess(s: TopicSeries, req: AnalysisRequest) -> TopicSeries:
    if req.preprocessing == "raw":
        return s
    if req.fill is not None:
        s = fill_gaps(s, req.fill)
    d = decompose_additive(s, req.period)
    return seasonally_adjust(d) if req.preprocessing == "adjusted" else trend_series(d)


# --- payload builders ---------------------------------------------------

def categories_payload(dataset: Dataset) -> dict:
    return {
        "categories": list(dataset.categories),
        "core_categories": list(dataset.core_categories),
    }


def _series_points(s: TopicSeries) -> list[dict]:
    return [
        {"date": day.isoformat(), "value": float(v), "present": bool(p)}
        for day, v, p in zip(s.dates(), s.values, s.present)
    ]


def series_payload(dataset: Dataset, req: AnalysisRequest) -> dict:
    _validate(req, dataset)
    start, end = _window(req, dataset, joint=False)
    s = _build(req, dataset, req.source, start, end)
    return {
        "source": s.source,
        "category": s.category,
        "strategy": s.strategy,
        "start_date": s.start_date.isoformat(),
        "end_date": s.end_date.isoformat(),
        "points": _series_points(s),
    }


def decomposition_payload(dataset: Dataset, req: AnalysisRequest) -> dict:
    _validate(req, dataset)
    start, end = _window(req, dataset, joint=False)
    s = _build(req, dataset, req.source, start, end)
    if req.fill is not None:
        s = fill_gaps(s, req.fill)
    d = decompose_additive(s, req.period)

    def opt(x: float) -> float | None:
        return None if np.isnan(x) else float(x)

    return {
        "source": s.source,
        "category": s.category,
        "strategy": s.strategy,
        "start_date": s.start_date.isoformat(),
        "end_date": s.end_date.isoformat(),
        "period": int(d.period),
        "seasonal_figures": [float(f) for f in d.figures],
        "points": [
            {"date": day.isoformat(), "observed": float(o),
             "trend": opt(t), "seasonal": float(se), "irregular": opt(i)}
            for day, o, t, se, i in zip(s.dates(), s.values, d.trend, d.seasonal, d.irregular)
        ],
    }


def _effective_params(req: AnalysisRequest, start: date, end: date, *,
                      include_sax: bool, include_lag: bool) -> dict:
    params = {
        "category": req.category,
        "strategy": req.strategy,
        "preprocessing": req.preprocessing,
        "from": start.isoformat(),
        "to": end.isoformat(),
        "period": int(req.period),
        "fill": req.fill,
    }
    if include_lag:
        params["max_lag"] = int(req.max_lag)
        params["min_overlap"] = int(req.min_overlap)
    if include_sax:
        params["alphabet_size"] = int(req.alphabet_size)
        params["word_length"] = None if req.word_length is None else int(req.word_length)
        params["trend_threshold"] = float(req.trend_threshold)
    return params


def correlation_payload(dataset: Dataset, req: AnalysisRequest) -> dict:
    """CCF table plus the detected delay for (call, social) of one category."""
    _validate(req, dataset)
    start, end = _window(req, dataset, joint=True)
    call_s = _preprocess(_build(req, dataset, "call", start, end), req)
    social_s = _preprocess(_build(req, dataset, "social", start, end), req)
    call_s, social_s = align(call_s, social_s)
    table = ccf(call_s.masked_values(), social_s.masked_values(),
                req.max_lag, min_overlap=req.min_overlap)
    lag = detect_delay(table)
    return {
        "params": _effective_params(req, start, end, include_sax=False, include_lag=True),
        "orientation": dict(ORIENTATION),
        "lags": [
            {"lag": int(h), "correlation": float(r), "n_overlap": int(n)}
            for h, r, n in zip(table.lags, table.correlations, table.n_overlap)
        ],
        "skipped": [
            {"lag": int(h), "reason": reason}
            for h, reason in sorted(table.skipped.items())
        ],
        "delay": {
            "delay": int(lag.delay),
            "peak_correlation": float(lag.peak_correlation),
            "sign": lag.sign,
            "lead_lag_label": lag.lead_lag_label,
        },
    }


def _word_payload(word, weekly: list[tuple[str, float]]) -> dict:
    return {
        "word": word.letters,
        "symbols": [int(s) for s in word.symbols],
        "word_length": int(word.word_length),
        "alphabet_size": int(word.alphabet_size),
        "breakpoints": [float(b) for b in word.breakpoints],
        "source_mean": float(word.source_mean),
        "source_std": float(word.source_std),
        "weekly_values": [float(v) for _, v in weekly],
    }


def sax_payload(dataset: Dataset, req: AnalysisRequest) -> dict:
    """Weekly SAX words for both sources plus the trend comparison."""
    _validate(req, dataset)
    start, end = _window(req, dataset, joint=True)
    call_s, social_s = align(_build(req, dataset, "call", start, end),
                             _build(req, dataset, "social", start, end))
    word_call, word_social, comparison = trend_report(
        call_s, social_s, word_length=req.word_length,
        alphabet_size=req.alphabet_size, threshold=req.trend_threshold)
    weekly_call = weekly_buckets(call_s)
    weekly_social = weekly_buckets(social_s)
    return {
        "params": _effective_params(req, start, end, include_sax=True, include_lag=False),
        "weeks": [label for label, _ in weekly_call],
        "call": _word_payload(word_call, weekly_call),
        "social": _word_payload(word_social, weekly_social),
        "comparison": {
            "pearson_on_indices": float(comparison.pearson_on_indices),
            "label": comparison.label,
            "note": comparison.note,
        },
    }


def canonical_json(payload: dict) -> str:
    """The one JSON rendering used by both the CLI and the service."""
    return json.dumps(payload, indent=2, sort_keys=True)
