"""Parsing of raw call-centre and social-media event files.

Call files are delimiter-separated text with a header row; posts come as
CSV or JSON lines. Column names are remappable because exports from
different offices rarely agree on headers. Rows that fail to parse are
collected into an error report with their row number instead of being
dropped silently.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import IO, Iterable
from zoneinfo import ZoneInfo

from .errors import IngestError
from .rules import RuleSet

# Header aliases tried (case/space-insensitively) when no explicit mapping is given.
CALL_COLUMN_ALIASES = {
    "id": ("id", "call id", "record id"),
    "date": ("date", "call date"),
    "duration": ("duration", "duration seconds", "call duration"),
    "disposition_code": ("disposition code", "disposition", "code"),
    "disposition_text": ("disposition code text", "disposition text", "code text"),
}
POST_COLUMN_ALIASES = {
    "post_id": ("post id", "postid", "tweetid", "tweet id", "id"),
    "text": ("text", "tweettext", "tweet text", "body"),
    "post_time": ("post time", "posttime", "time", "timestamp", "created at"),
    "user_name": ("user name", "username", "user", "screen name"),
}

_DMY_RE = re.compile(r"^(\d{1,2})/(\d{1,2})/(\d{4})$")
_DURATION_RE = re.compile(r"^(\d+)\s*(s|sec|secs|m|min|mins)?$", re.IGNORECASE)


@dataclass(frozen=True)
class CallRecord:
    """One call-centre interaction, categorized later via its disposition."""

    id: str
    date: date
    duration: int | None = None
    disposition_code: str = ""
    disposition_text: str = ""

    def disposition(self) -> str:
        return f"{self.disposition_code} {self.disposition_text}".strip()


@dataclass(frozen=True)
class PostRecord:
    """One social-media post; topics are found by keyword search over text."""

    post_id: str
    text: str
    post_time: datetime
    user_name: str = ""


@dataclass(frozen=True)
class ParseIssue:
    """A row that could not be turned into a record."""

    row: int
    message: str
    raw: str = ""


@dataclass
class ParseReport:
    """Parsed records plus the per-row errors encountered along the way."""

    issues: list[ParseIssue] = field(default_factory=list)

    def add(self, row: int, message: str, raw: str = "") -> None:
        self.issues.append(ParseIssue(row=row, message=message, raw=raw))

    def __len__(self) -> int:
        return len(self.issues)


def parse_date(value: str) -> date:
    """Parse an ISO date or a day-first D/M/YYYY date."""
    value = value.strip()
    m = _DMY_RE.match(value)
    if m:
        day, month, year = (int(g) for g in m.groups())
        return date(year, month, day)
    return date.fromisoformat(value)


def parse_timestamp(value: str) -> datetime:
    """Parse a timestamp with at least day granularity."""
    value = value.strip()
    m = _DMY_RE.match(value)
    if m:
        day, month, year = (int(g) for g in m.groups())
        return datetime(year, month, day)
    return datetime.fromisoformat(value)


def parse_duration(value: str) -> int | None:
    """Duration in seconds; accepts plain seconds or "10 min" style values."""
    value = value.strip()
    if not value:
        return None
    m = _DURATION_RE.match(value)
    if not m:
        return None
    amount = int(m.group(1))
    unit = (m.group(2) or "s").lower()
    return amount * 60 if unit.startswith("m") else amount


def _normalize_header(name: str) -> str:
    return re.sub(r"[\s_]+", " ", name.strip().lower())


def _resolve_columns(header: list[str], aliases: dict[str, tuple[str, ...]],
                     mapping: dict[str, str] | None, required: tuple[str, ...]) -> dict[str, int]:
    """Map logical field names to header indices; raises on missing required ones."""
    normalized = {_normalize_header(h): i for i, h in enumerate(header)}
    resolved: dict[str, int] = {}
    for logical, candidates in aliases.items():
        if mapping and logical in mapping:
            candidates = (mapping[logical],)
        for cand in candidates:
            idx = normalized.get(_normalize_header(cand))
            if idx is not None:
                resolved[logical] = idx
                break
    missing = [name for name in required if name not in resolved]
    if missing:
        raise IngestError(f"header is missing required columns: {', '.join(missing)} "
                          f"(got: {', '.join(header)})")
    return resolved


def _open_text(source: str | Path | IO[str]) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline="")
    return source


def parse_call_records(source: str | Path | IO[str], *, delimiter: str = ",",
                       columns: dict[str, str] | None = None,
                       report: ParseReport | None = None) -> tuple[list[CallRecord], ParseReport]:
    """Parse call records from delimited text with a header row.

    ``columns`` overrides the header-name detection, e.g.
    ``{"date": "CallDate", "disposition_code": "DISPOSITION"}``. A malformed
    header raises :class:`IngestError`; malformed rows land in the report.
    """
    report = report if report is not None else ParseReport()
    fh = _open_text(source)
    try:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError("empty input: no header row") from None
        cols = _resolve_columns(header, CALL_COLUMN_ALIASES, columns,
                                required=("id", "date", "disposition_code"))
        records: list[CallRecord] = []
        for rownum, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                rec_id = row[cols["id"]].strip()
                if not rec_id:
                    raise ValueError("empty id")
                day = parse_date(row[cols["date"]])
            except (ValueError, IndexError) as exc:
                report.add(rownum, f"bad row: {exc}", raw=delimiter.join(row))
                continue
            duration = None
            if "duration" in cols and cols["duration"] < len(row):
                duration = parse_duration(row[cols["duration"]])
            text_idx = cols.get("disposition_text")
            records.append(CallRecord(
                id=rec_id,
                date=day,
                duration=duration,
                disposition_code=row[cols["disposition_code"]].strip(),
                disposition_text=row[text_idx].strip() if text_idx is not None and text_idx < len(row) else "",
            ))
        return records, report
    finally:
        if isinstance(source, (str, Path)):
            fh.close()


def parse_post_records(source: str | Path | IO[str], *, fmt: str = "auto", delimiter: str = ",",
                       columns: dict[str, str] | None = None,
                       report: ParseReport | None = None) -> tuple[list[PostRecord], ParseReport]:
    """Parse posts from CSV (header row) or JSON lines.

    ``fmt`` is "csv", "jsonl", or "auto" (sniffs a leading '{').
    """
    report = report if report is not None else ParseReport()
    fh = _open_text(source)
    try:
        content = fh.read()
    finally:
        if isinstance(source, (str, Path)):
            fh.close()
    if fmt == "auto":
        stripped = content.lstrip()
        fmt = "jsonl" if stripped.startswith("{") else "csv"
    if fmt == "jsonl":
        return _parse_posts_jsonl(content, report)
    return _parse_posts_csv(content, delimiter, columns, report)


def _parse_posts_csv(content: str, delimiter: str, columns: dict[str, str] | None,
                     report: ParseReport) -> tuple[list[PostRecord], ParseReport]:
    reader = csv.reader(io.StringIO(content, newline=""), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("empty input: no header row") from None
    cols = _resolve_columns(header, POST_COLUMN_ALIASES, columns,
                            required=("post_id", "text", "post_time"))
    records: list[PostRecord] = []
    for rownum, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            post_id = row[cols["post_id"]].strip()
            if not post_id:
                raise ValueError("empty post_id")
            when = parse_timestamp(row[cols["post_time"]])
        except (ValueError, IndexError) as exc:
            report.add(rownum, f"bad row: {exc}", raw=delimiter.join(row))
            continue
        user_idx = cols.get("user_name")
        records.append(PostRecord(
            post_id=post_id,
            text=row[cols["text"]] if cols["text"] < len(row) else "",
            post_time=when,
            user_name=row[user_idx].strip() if user_idx is not None and user_idx < len(row) else "",
        ))
    return records, report


_POST_JSON_KEYS = {
    "post_id": ("post_id", "tweetID", "tweetId", "id"),
    "text": ("text", "tweetText"),
    "post_time": ("post_time", "postTime", "time", "created_at"),
    "user_name": ("user_name", "userName", "user"),
}


def _parse_posts_jsonl(content: str, report: ParseReport) -> tuple[list[PostRecord], ParseReport]:
    records: list[PostRecord] = []
    for rownum, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("not a JSON object")
            values = {}
            for logical, keys in _POST_JSON_KEYS.items():
                for key in keys:
                    if key in obj:
                        values[logical] = obj[key]
                        break
            post_id = str(values.get("post_id", "")).strip()
            if not post_id:
                raise ValueError("missing post id")
            if "post_time" not in values:
                raise ValueError("missing post time")
            when = parse_timestamp(str(values["post_time"]))
        except (ValueError, json.JSONDecodeError) as exc:
            report.add(rownum, f"bad line: {exc}", raw=line[:200])
            continue
        records.append(PostRecord(
            post_id=post_id,
            text=str(values.get("text", "")),
            post_time=when,
            user_name=str(values.get("user_name", "")),
        ))
    return records, report


def categorize_call(record: CallRecord, rules: RuleSet) -> str:
    """The single category of a call: first rule matching either disposition
    field, in rule order, with "other" as the fallback."""
    return rules.first_match(record.disposition())


def categorize_post(record: PostRecord, rules: RuleSet) -> set[str]:
    """All categories whose keywords occur in the post text (may be empty)."""
    return rules.all_matches(record.text)


def categorize_calls(records: Iterable[CallRecord], rules: RuleSet) -> list[tuple[date, frozenset[str]]]:
    """Per-record (day, categories) pairs: one core category plus overlay hits."""
    out = []
    for rec in records:
        text = rec.disposition()
        cats = {rules.first_match(text)} | rules.overlay_matches(text)
        out.append((rec.date, frozenset(cats)))
    return out


def categorize_posts(records: Iterable[PostRecord], rules: RuleSet,
                     tz: str = "UTC") -> list[tuple[date, frozenset[str]]]:
    """Per-record (day, categories) pairs: all core matches plus overlay hits.

    Timestamps carrying a zone are converted to ``tz`` before the day is
    taken; naive timestamps are assumed to already be in that zone.
    """
    zone = ZoneInfo(tz)
    out = []
    for rec in records:
        when = rec.post_time
        if when.tzinfo is not None:
            when = when.astimezone(zone)
        cats = rules.all_matches(rec.text) | rules.overlay_matches(rec.text)
        out.append((when.date(), frozenset(cats)))
    return out
