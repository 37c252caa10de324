"""File parsing: header mapping, day-first dates, row-level error reports."""
from __future__ import annotations

import io
from datetime import date, datetime

import pytest

from couplekit.errors import IngestError
from couplekit.ingest import (categorize_posts, parse_call_records, parse_date,
                              parse_duration, parse_post_records)
from tests.conftest import TOY_CALLS_CSV


def test_toy_example_row():
    records, report = parse_call_records(io.StringIO(TOY_CALLS_CSV))
    assert len(records) == 6 and not report.issues
    first = records[0]
    assert first.id == "ID1"
    assert first.date == date(2013, 12, 6)
    assert first.duration == 60
    assert first.disposition_text == "457 visa application progress"


def test_empty_file_with_header():
    records, report = parse_call_records(io.StringIO("id,date,disposition_code\n"))
    assert records == [] and not report.issues


def test_bad_date_row_is_reported_not_dropped_silently():
    content = ("id,date,duration,disposition_code\n"
               "A1,2014-01-05,60,457 visa\n"
               "A2,not-a-date,60,457 visa\n")
    records, report = parse_call_records(io.StringIO(content))
    assert len(records) == 1
    assert len(report.issues) == 1
    assert report.issues[0].row == 3


def test_missing_required_column_is_fatal():
    with pytest.raises(IngestError):
        parse_call_records(io.StringIO("id,when,code\nA,2014-01-01,x\n"))


def test_empty_input_is_fatal():
    with pytest.raises(IngestError):
        parse_call_records(io.StringIO(""))


def test_explicit_column_mapping():
    content = "CALL_REF,CallDate,DISPOSITION\nZ9,3/2/2014,600 visit\n"
    records, _ = parse_call_records(io.StringIO(content), columns={
        "id": "CALL_REF", "date": "CallDate", "disposition_code": "DISPOSITION"})
    assert records[0].id == "Z9"
    assert records[0].date == date(2014, 2, 3)   # day-first


def test_alternate_delimiter():
    content = "id|date|disposition_code\nA|2014-01-01|457 visa\n"
    records, _ = parse_call_records(io.StringIO(content), delimiter="|")
    assert len(records) == 1


@pytest.mark.parametrize("raw,expected", [
    ("6/12/2013", date(2013, 12, 6)),
    ("2013-12-06", date(2013, 12, 6)),
    ("28/2/2014", date(2014, 2, 28)),
])
def test_date_formats(raw, expected):
    assert parse_date(raw) == expected


@pytest.mark.parametrize("raw,expected", [
    ("60", 60), ("1min", 60), ("10 min", 600), ("15 min", 900), ("", None),
    ("n/a", None), ("90s", 90),
])
def test_duration_parsing(raw, expected):
    assert parse_duration(raw) == expected


def test_posts_jsonl_with_source_style_keys():
    content = ('{"tweetID": "T1", "tweetText": "my 574 visa", '
               '"postTime": "2014-01-03T09:30:00", "userName": "abc"}\n'
               '{"tweetID": "T2", "tweetText": "hello", "postTime": "2014-01-04"}\n')
    records, report = parse_post_records(io.StringIO(content), fmt="jsonl")
    assert not report.issues
    assert records[0].post_id == "T1"
    assert records[0].post_time == datetime(2014, 1, 3, 9, 30)
    assert records[1].post_time == datetime(2014, 1, 4)


def test_posts_jsonl_bad_lines_reported():
    content = ('{"post_id": "T1", "text": "x", "post_time": "2014-01-03"}\n'
               "this is not json\n"
               '{"post_id": "", "text": "x", "post_time": "2014-01-03"}\n')
    records, report = parse_post_records(io.StringIO(content), fmt="jsonl")
    assert len(records) == 1
    assert [i.row for i in report.issues] == [2, 3]


def test_posts_csv():
    content = ("post_id,text,post_time,user_name\n"
               "P1,applying for a 457,2014-01-02T10:00:00,u1\n")
    records, report = parse_post_records(io.StringIO(content), fmt="csv")
    assert not report.issues
    assert records[0].text == "applying for a 457"


def test_posts_auto_format_detection():
    jsonl = '{"post_id": "T1", "text": "x", "post_time": "2014-01-03"}\n'
    records, _ = parse_post_records(io.StringIO(jsonl))
    assert records[0].post_id == "T1"
    csv_content = "post_id,text,post_time\nP1,x,2014-01-03\n"
    records, _ = parse_post_records(io.StringIO(csv_content))
    assert records[0].post_id == "P1"


def test_post_day_uses_configured_zone(rules):
    content = ('{"post_id": "T1", "text": "457 visa", '
               '"post_time": "2014-01-03T23:30:00+00:00"}\n')
    records, _ = parse_post_records(io.StringIO(content), fmt="jsonl")
    utc_events = categorize_posts(records, rules, tz="UTC")
    assert utc_events[0][0] == date(2014, 1, 3)
    sydney_events = categorize_posts(records, rules, tz="Australia/Sydney")
    assert sydney_events[0][0] == date(2014, 1, 4)
