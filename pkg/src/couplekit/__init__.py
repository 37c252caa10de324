"""Coupling analysis between call-centre and social-media event streams.

The pipeline: parse and categorize raw events (ingest, rules), build
daily topical series (series), remove weekly seasonality (decompose),
measure lagged correlation and detect the delay (correlate), and compare
weekly trends symbolically (symbolic). A synthetic generator (synth)
provides ground-truth fixtures, and cli/service expose everything to
scripts, HTTP clients, and the bundled exploration UI.
"""
from .correlate import CcfResult, LagResult, ccf, cross_correlation, detect_delay
from .decompose import DecomposedSeries, decompose_additive, seasonally_adjust
from .errors import CouplekitError
from .ingest import (CallRecord, PostRecord, categorize_call, categorize_post,
                     parse_call_records, parse_post_records)
from .rules import CORE_CATEGORIES, Rule, RuleSet, default_rules, load_rules
from .series import (DailyCounts, TopicSeries, align, build_series, date_range,
                     fill_gaps)
from .symbolic import (SaxWord, TrendComparison, compare_trends, mindist, paa,
                       sax, weekly_aggregate)
from .synth import CategoryRate, Coupling, SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "CORE_CATEGORIES",
    "CallRecord",
    "CategoryRate",
    "CcfResult",
    "Coupling",
    "CouplekitError",
    "DailyCounts",
    "DecomposedSeries",
    "LagResult",
    "PostRecord",
    "Rule",
    "RuleSet",
    "SaxWord",
    "SynthSpec",
    "TopicSeries",
    "TrendComparison",
    "align",
    "build_series",
    "categorize_call",
    "categorize_post",
    "ccf",
    "compare_trends",
    "cross_correlation",
    "date_range",
    "decompose_additive",
    "default_rules",
    "detect_delay",
    "fill_gaps",
    "generate",
    "load_rules",
    "mindist",
    "paa",
    "parse_call_records",
    "parse_post_records",
    "sax",
    "seasonally_adjust",
    "weekly_aggregate",
]
