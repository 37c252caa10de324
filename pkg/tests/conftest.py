"""Shared fixtures and the acceptance pass/fail reporter."""
from __future__ import annotations

import io
import json
from datetime import date, timedelta

import pytest

from couplekit.cache import build_cache
from couplekit.config import Config
from couplekit.ingest import categorize_calls, categorize_posts, parse_call_records
from couplekit.rules import default_rules
from couplekit.series import DailyCounts
from couplekit.synth import CategoryRate, Coupling, SynthSpec, write_fixture

# Six interaction records over two days: three on 6 Dec 2013 (two work, one
# study) and three on 7 Dec 2013 (two visit, one permanent).
TOY_CALLS_CSV = """\
id,date,duration,disposition_code,disposition_text
ID1,6/12/2013,60,457 visa,457 visa application progress
ID2,6/12/2013,600,student visa,574 visa
ID3,6/12/2013,180,457 visa,457 visa application progress
ID4,7/12/2013,900,600 visit,600 visit visa
ID5,7/12/2013,60,600 visit,600 electronic visa
ID6,7/12/2013,300,skilled migration,skilled selection
"""

DEC_6 = date(2013, 12, 6)
DEC_7 = date(2013, 12, 7)


@pytest.fixture(scope="session")
def rules():
    return default_rules()


@pytest.fixture()
def toy_calls(rules):
    records, report = parse_call_records(io.StringIO(TOY_CALLS_CSV))
    assert not report.issues
    return records


@pytest.fixture()
def toy_call_counts(toy_calls, rules):
    return DailyCounts.from_events(categorize_calls(toy_calls, rules))


def make_counts_from_posts(posts, rules):
    return DailyCounts.from_events(categorize_posts(posts, rules))


def _build_synth_cache(tmp_path_factory, name: str, spec: SynthSpec) -> dict:
    root = tmp_path_factory.mktemp(name)
    paths = write_fixture(spec, root / "fixture")
    cache = root / "cache"
    build_cache(cache, call_files=[paths["calls"]], post_files=[paths["posts"]],
                rules=default_rules(), config=Config())
    truth = json.loads(paths["truth"].read_text())
    return {"cache": cache, "fixture": root / "fixture", "truth": truth, "spec": spec}


@pytest.fixture(scope="session")
def pos_fixture(tmp_path_factory):
    """Cached synth dataset: work calls trail posts by 2 days, positive sign."""
    start = date(2023, 1, 2)
    spec = SynthSpec(
        start=start, end=start + timedelta(days=239),
        categories=(CategoryRate("work", 25.0, 25.0), CategoryRate("visit", 10.0, 10.0),
                    CategoryRate("citizen", 8.0, 8.0), CategoryRate("other", 12.0, 12.0)),
        couplings=(Coupling("work", 2, "positive", 0.95),),
        seed=2024)
    return _build_synth_cache(tmp_path_factory, "pos_fixture", spec)


@pytest.fixture(scope="session")
def neg_fixture(tmp_path_factory):
    """Weekend-closed synth dataset: work calls trail posts by 1 day, negative."""
    start = date(2023, 1, 2)
    spec = SynthSpec(
        start=start, end=start + timedelta(days=239),
        categories=(CategoryRate("work", 25.0, 25.0), CategoryRate("visit", 10.0, 10.0),
                    CategoryRate("other", 12.0, 12.0)),
        couplings=(Coupling("work", 1, "negative", 0.95),),
        weekend_closure=True, seed=55)
    return _build_synth_cache(tmp_path_factory, "neg_fixture", spec)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\n[ACCEPTANCE] {name}: {outcome} ({report.duration:.2f}s)")
