"""On-disk snapshot of an ingested, categorized dataset.

Ingestion parses the raw files once, categorizes every record, and writes
per-source event tables (columnar text: date, categories) plus a manifest
with the sha256 of each source file. The CLI and the HTTP service then
load that snapshot read-only; nothing mutates a cache after it is built.
"""
from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path

from .config import Config
from .errors import ConfigError, IngestError
from .ingest import (ParseReport, categorize_calls, categorize_posts,
                     parse_call_records, parse_post_records)
from .rules import RuleSet, load_rules
from .series import DailyCounts

MANIFEST_NAME = "manifest.json"
EVENT_FILES = {"call": "call_events.csv", "social": "post_events.csv"}
ERRORS_NAME = "ingest_errors.csv"


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_events(path: Path, events: list[tuple[date, frozenset[str]]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date", "categories"])
        for day, cats in events:
            writer.writerow([day.isoformat(), ";".join(sorted(cats))])


def _read_events(path: Path) -> list[tuple[date, frozenset[str]]]:
    events = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        for row in reader:
            if not row:
                continue
            cats = frozenset(c for c in row[1].split(";") if c) if len(row) > 1 else frozenset()
            events.append((date.fromisoformat(row[0]), cats))
    return events


def build_cache(cache_dir: str | Path, *, call_files: list[Path], post_files: list[Path],
                rules: RuleSet, config: Config,
                call_columns: dict[str, str] | None = None,
                post_columns: dict[str, str] | None = None,
                delimiter: str = ",") -> dict:
    """Ingest the given files into ``cache_dir`` and return the manifest."""
    if not call_files and not post_files:
        raise IngestError("nothing to ingest: no call or post files given")
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)

    sources = []
    issues: list[tuple[str, int, str]] = []
    call_events: list[tuple[date, frozenset[str]]] = []
    post_events: list[tuple[date, frozenset[str]]] = []

    for path in call_files:
        report = ParseReport()
        records, _ = parse_call_records(path, delimiter=delimiter,
                                        columns=call_columns, report=report)
        call_events.extend(categorize_calls(records, rules))
        sources.append({"path": str(path), "kind": "call", "sha256": _sha256(Path(path)),
                        "records": len(records), "errors": len(report)})
        issues.extend((str(path), i.row, i.message) for i in report.issues)
    for path in post_files:
        report = ParseReport()
        records, _ = parse_post_records(path, delimiter=delimiter,
                                        columns=post_columns, report=report)
        post_events.extend(categorize_posts(records, rules, tz=config.timezone))
        sources.append({"path": str(path), "kind": "social", "sha256": _sha256(Path(path)),
                        "records": len(records), "errors": len(report)})
        issues.extend((str(path), i.row, i.message) for i in report.issues)

    call_events.sort(key=lambda e: e[0])
    post_events.sort(key=lambda e: e[0])
    _write_events(cache_dir / EVENT_FILES["call"], call_events)
    _write_events(cache_dir / EVENT_FILES["social"], post_events)

    with open(cache_dir / ERRORS_NAME, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source", "row", "message"])
        writer.writerows(issues)

    manifest = {
        "version": 1,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "sources": sources,
        "categories": list(rules.categories),
        "core_categories": list(rules.core_categories),
        "counts": {"call": len(call_events), "social": len(post_events)},
    }
    (cache_dir / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2) + "\n",
                                           encoding="utf-8")
    return manifest


@dataclass(frozen=True)
class Dataset:
    """An immutable loaded snapshot, shared by CLI commands and the service."""

    calls: DailyCounts
    posts: DailyCounts
    categories: tuple[str, ...]
    core_categories: tuple[str, ...]
    manifest: dict

    def counts_for(self, source: str) -> DailyCounts:
        return self.calls if source == "call" else self.posts

    def default_range(self, source: str) -> tuple[date, date]:
        counts = self.counts_for(source)
        if counts.first_day is None:
            raise ConfigError(f"cached dataset has no {source} events")
        return counts.first_day, counts.last_day

    def joint_range(self) -> tuple[date, date]:
        """Intersection of call and post coverage."""
        c0, c1 = self.default_range("call")
        p0, p1 = self.default_range("social")
        start, end = max(c0, p0), min(c1, p1)
        if end < start:
            raise ConfigError("call and post coverage do not overlap")
        return start, end


def load_dataset(cache_dir: str | Path) -> Dataset:
    """Load a snapshot previously written by :func:`build_cache`."""
    cache_dir = Path(cache_dir)
    manifest_path = cache_dir / MANIFEST_NAME
    if not manifest_path.exists():
        raise ConfigError(f"{cache_dir} is not a dataset cache (missing {MANIFEST_NAME}); "
                          "run the ingest command first")
    manifest = json.loads(manifest_path.read_text("utf-8"))
    calls = DailyCounts.from_events(_read_events(cache_dir / EVENT_FILES["call"]))
    posts = DailyCounts.from_events(_read_events(cache_dir / EVENT_FILES["social"]))
    return Dataset(
        calls=calls,
        posts=posts,
        categories=tuple(manifest.get("categories", ())),
        core_categories=tuple(manifest.get("core_categories", ())),
        manifest=manifest,
    )


def rules_for(config: Config) -> RuleSet:
    return load_rules(config.rules_path)
