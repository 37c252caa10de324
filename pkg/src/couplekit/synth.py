"""Synthetic coupled event streams with known ground truth.

Real call-centre extracts and post harvests cannot be redistributed, so
end-to-end verification runs on generated data: each category gets a
smooth latent daily intensity, post counts follow it, and call counts
follow the same latent shifted by a configured lag with a configured sign
and strength. Generated dispositions and post texts are built from tokens
that the default rule set maps straight back to the intended category.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, datetime, time
from pathlib import Path

import numpy as np

from .errors import SynthError
from .ingest import CallRecord, PostRecord
from .series import date_range

MAX_LAG_DAYS = 14
_AR_COEFF = 0.7     # day-to-day persistence of the latent intensity
_LOG_GAIN = 0.6     # latent-to-log-intensity gain

# (disposition code, disposition text, post text) per supported category.
# Tokens are chosen so the default rules recover exactly the intended
# category on both sides; "other" deliberately matches nothing.
CATEGORY_TEMPLATES = {
    "study": ("student visa", "574 visa enquiry",
              "my 574 student visa is still processing"),
    "visit": ("600 visit", "600 visitor visa",
              "any update on my 600 visitor visa application"),
    "work": ("457 visa", "457 visa application progress",
             "still waiting on the 457 visa decision"),
    "permanent": ("skilled migration", "skilled migration enquiry",
                  "skilled migration points threshold question"),
    "citizen": ("citizenship", "citizenship conferral enquiry",
                "when is my citizenship ceremony"),
    "other": ("general enquiry", "office opening hours",
              "what are the office opening hours this week"),
}


@dataclass(frozen=True)
class CategoryRate:
    """Mean daily event volume for one category on both sides."""

    name: str
    call_rate: float
    post_rate: float


@dataclass(frozen=True)
class Coupling:
    """Ground-truth linkage: calls follow posts by lag_days (if positive)."""

    category: str
    lag_days: int
    sign: str = "positive"       # "positive" | "negative"
    strength: float = 0.95       # correlation of the shared latent, in [0, 1]


@dataclass(frozen=True)
class SynthSpec:
    start: date
    end: date
    categories: tuple[CategoryRate, ...]
    couplings: tuple[Coupling, ...] = ()
    weekend_closure: bool = False
    noise_std: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.end < self.start:
            raise SynthError(f"empty date range: {self.start} to {self.end}")
        if not self.categories:
            raise SynthError("at least one category is required")
        names = set()
        for cat in self.categories:
            if cat.name not in CATEGORY_TEMPLATES:
                raise SynthError(f"no event templates for category {cat.name!r}; "
                                 f"supported: {', '.join(CATEGORY_TEMPLATES)}")
            if cat.call_rate <= 0 or cat.post_rate <= 0:
                raise SynthError(f"rates must be > 0 for category {cat.name!r}")
            names.add(cat.name)
        seen = set()
        for c in self.couplings:
            if c.category not in names:
                raise SynthError(f"coupling references unknown category {c.category!r}")
            if c.category in seen:
                raise SynthError(f"duplicate coupling for category {c.category!r}")
            if abs(c.lag_days) > MAX_LAG_DAYS:
                raise SynthError(f"|lag| must be <= {MAX_LAG_DAYS}, got {c.lag_days}")
            if not 0.0 <= c.strength <= 1.0:
                raise SynthError(f"strength must be in [0, 1], got {c.strength}")
            if c.sign not in ("positive", "negative"):
                raise SynthError(f"sign must be positive or negative, got {c.sign!r}")
            seen.add(c.category)
        if self.noise_std < 0:
            raise SynthError("noise_std must be >= 0")


def _ar1(rng: np.random.Generator, n: int) -> np.ndarray:
    """Stationary unit-variance AR(1) path."""
    eps = rng.standard_normal(n)
    z = np.empty(n)
    z[0] = eps[0]
    scale = np.sqrt(1.0 - _AR_COEFF ** 2)
    for t in range(1, n):
        z[t] = _AR_COEFF * z[t - 1] + scale * eps[t]
    return z


def _daily_counts(spec: SynthSpec, rng: np.random.Generator) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Per category: (call counts, post counts), one value per day in range."""
    days = date_range(spec.start, spec.end)
    n = len(days)
    pad = MAX_LAG_DAYS
    total = n + 2 * pad
    couplings = {c.category: c for c in spec.couplings}
    norm = np.exp(_LOG_GAIN ** 2 / 2.0)  # keeps the mean intensity at the base rate
    out: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for cat in spec.categories:
        z_post = _ar1(rng, total)
        eta = _ar1(rng, total)
        xi = rng.standard_normal(total)
        coupling = couplings.get(cat.name)
        if coupling is None:
            u_call = eta + spec.noise_std * xi
        else:
            rho = coupling.strength
            sign = 1.0 if coupling.sign == "positive" else -1.0
            shifted = np.roll(z_post, coupling.lag_days)  # padded ends absorb the wrap
            u_call = sign * rho * shifted + np.sqrt(1.0 - rho ** 2) * eta + spec.noise_std * xi
        lam_post = cat.post_rate * np.exp(_LOG_GAIN * z_post) / norm
        lam_call = cat.call_rate * np.exp(_LOG_GAIN * u_call) / norm
        post_counts = rng.poisson(lam_post[pad:pad + n])
        call_counts = rng.poisson(lam_call[pad:pad + n])
        if spec.weekend_closure:
            weekend = np.array([d.weekday() >= 5 for d in days])
            call_counts = np.where(weekend, 0, call_counts)
        out[cat.name] = (call_counts, post_counts)
    return out


def generate(spec: SynthSpec) -> tuple[list[CallRecord], list[PostRecord]]:
    """Materialize the spec as concrete event records.

    Identical specs (including the seed) produce identical records; record
    ids are sequential in (day, category declaration order).
    """
    rng = np.random.default_rng(spec.seed)
    counts = _daily_counts(spec, rng)
    days = date_range(spec.start, spec.end)
    calls: list[CallRecord] = []
    posts: list[PostRecord] = []
    for i, day in enumerate(days):
        for cat in spec.categories:
            code, text, post_text = CATEGORY_TEMPLATES[cat.name]
            call_n, post_n = counts[cat.name]
            for _ in range(int(call_n[i])):
                calls.append(CallRecord(
                    id=f"C{len(calls) + 1:06d}",
                    date=day,
                    duration=int(rng.integers(30, 900)),
                    disposition_code=code,
                    disposition_text=text,
                ))
            for _ in range(int(post_n[i])):
                seconds = int(rng.integers(0, 86400))
                posts.append(PostRecord(
                    post_id=f"P{len(posts) + 1:06d}",
                    text=post_text,
                    post_time=_at_seconds(day, seconds),
                    user_name=f"user{int(rng.integers(1, 500)):03d}",
                ))
    return calls, posts


def _at_seconds(day: date, seconds: int) -> datetime:
    return datetime.combine(day, time(seconds // 3600, seconds % 3600 // 60, seconds % 60))


def render_calls_csv(records: list[CallRecord]) -> str:
    """The exact file format the call parser consumes."""
    lines = ["id,date,duration,disposition_code,disposition_text"]
    for rec in records:
        lines.append(f"{rec.id},{rec.date.isoformat()},{rec.duration},"
                     f"{rec.disposition_code},{rec.disposition_text}")
    return "\n".join(lines) + "\n"


def render_posts_jsonl(records: list[PostRecord]) -> str:
    """The exact JSON-lines format the post parser consumes."""
    lines = []
    for rec in records:
        lines.append(json.dumps({
            "post_id": rec.post_id,
            "text": rec.text,
            "post_time": rec.post_time.isoformat(),
            "user_name": rec.user_name,
        }, sort_keys=True))
    return "\n".join(lines) + "\n"


def truth_payload(spec: SynthSpec) -> dict:
    """Ground-truth description written next to generated fixtures."""
    return {
        "start": spec.start.isoformat(),
        "end": spec.end.isoformat(),
        "seed": spec.seed,
        "weekend_closure": spec.weekend_closure,
        "noise_std": spec.noise_std,
        "categories": [
            {"name": c.name, "call_rate": c.call_rate, "post_rate": c.post_rate}
            for c in spec.categories
        ],
        "couplings": [
            {"category": c.category, "lag_days": c.lag_days,
             "sign": c.sign, "strength": c.strength}
            for c in spec.couplings
        ],
    }


def write_fixture(spec: SynthSpec, outdir: str | Path) -> dict[str, Path]:
    """Write calls.csv, posts.jsonl, and truth.json into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    calls, posts = generate(spec)
    paths = {
        "calls": outdir / "calls.csv",
        "posts": outdir / "posts.jsonl",
        "truth": outdir / "truth.json",
    }
    paths["calls"].write_text(render_calls_csv(calls), encoding="utf-8")
    paths["posts"].write_text(render_posts_jsonl(posts), encoding="utf-8")
    paths["truth"].write_text(json.dumps(truth_payload(spec), indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")
    return paths
