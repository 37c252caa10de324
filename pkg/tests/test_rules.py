"""Categorization rules: ordered first-match for calls, multi-match for posts,
whole-token safety for numeric subclass codes."""
from __future__ import annotations

from collections import Counter
from datetime import date, datetime

import pytest

from couplekit.errors import ConfigError
from couplekit.ingest import CallRecord, PostRecord, categorize_call, categorize_post
from couplekit.rules import Rule, RuleSet, default_rules, tokenize

# Independent transcription of every alternation token, kept separate from
# the shipped rules file so a rules regression cannot hide itself.
RULE_TOKENS = {
    "study": ["eStudent", "student", "560", "570", "571", "572", "573", "574",
              "575", "576", "temp grad"],
    "visit": ["600", "676", "e600", "e651", "e676", "eta", "transit",
              "business visitor", "eVisitor", "visitor", "sponsor visitor",
              "medical treatment", "carer"],
    "work": ["400", "417", "456", "457", "462", "e400", "e417", "e457", "e462",
             "temp long", "temp short", "whm"],
    "permanent": ["gsm", "family migration", "professional migration",
                  "partner migration", "rrv", "adoption",
                  "adult migrant English program", "business skills", "cers",
                  "employer sponsored", "employees", "employers",
                  "NZ Family Relationship", "parent", "refugee",
                  "remaining relative", "skilled migration", "skill select",
                  "family and living"],
    "citizen": ["citizenship", "conferral", "declaratory visa", "descent",
                "renunciation", "resumption"],
}


def call(disposition: str) -> CallRecord:
    return CallRecord(id="X", date=date(2014, 1, 1), disposition_code=disposition)


def post(text: str) -> PostRecord:
    return PostRecord(post_id="P", text=text, post_time=datetime(2014, 1, 1, 12))


@pytest.mark.parametrize("category,token", [
    (cat, tok) for cat, toks in RULE_TOKENS.items() for tok in toks
])
def test_every_rule_token_maps_to_its_category(rules, category, token):
    assert categorize_call(call(token), rules) == category


@pytest.mark.parametrize("disposition,expected", [
    ("457 visa", "work"),
    ("574 visa", "study"),
    ("zzz unknown", "other"),
    ("skilled migration", "permanent"),
])
def test_call_examples(rules, disposition, expected):
    assert categorize_call(call(disposition), rules) == expected


@pytest.mark.parametrize("text", ["5600", "1560", "visa5600", "a1560b", "e5600"])
def test_numeric_codes_only_match_whole_tokens(rules, text):
    assert categorize_call(call(text), rules) == "other"
    assert categorize_post(post(f"my {text} thing"), rules) == set()


def test_phrases_need_consecutive_tokens(rules):
    assert categorize_call(call("temp grad visa"), rules) == "study"
    # "temp" and "grad" present but separated: no phrase hit
    assert categorize_call(call("temp visa grad"), rules) == "other"


def test_call_matches_either_disposition_field(rules):
    rec = CallRecord(id="X", date=date(2014, 1, 1),
                     disposition_code="skilled migration",
                     disposition_text="skilled selection")
    assert categorize_call(rec, rules) == "permanent"
    rec2 = CallRecord(id="X", date=date(2014, 1, 1),
                      disposition_code="??", disposition_text="600 electronic visa")
    assert categorize_call(rec2, rules) == "visit"


@pytest.mark.parametrize("text,expected", [
    ("my 574 visa was granted", {"study"}),
    ("applying for a 457 and citizenship", {"work", "citizen"}),
    ("nice weather", set()),
])
def test_post_examples(rules, text, expected):
    assert categorize_post(post(text), rules) == expected


def test_post_matching_is_case_insensitive(rules):
    assert categorize_post(post("STUDENT visa drama"), rules) == {"study"}
    assert categorize_call(call("CITIZENSHIP"), rules) == "citizen"


def test_determinism(rules):
    texts = ["457 visa", "600 visit", "random words", "student 560"]
    first = [categorize_call(call(t), rules) for t in texts]
    second = [categorize_call(call(t), rules) for t in texts]
    assert first == second


def test_partition_over_a_batch(rules):
    dispositions = (RULE_TOKENS["study"] + RULE_TOKENS["visit"] + RULE_TOKENS["work"]
                    + ["junk one", "junk two"])
    counts = Counter(categorize_call(call(d), rules) for d in dispositions)
    assert sum(counts.values()) == len(dispositions)
    assert set(counts) <= set(rules.core_categories)


def test_overlay_categories_do_not_affect_core(rules):
    # "refugee" is both a permanent pattern and an extension overlay
    assert categorize_call(call("refugee enquiry"), rules) == "permanent"
    assert rules.overlay_matches("refugee enquiry") == {"refugee"}
    assert "refugee" in rules.categories
    assert "refugee" not in rules.core_categories


def test_extension_names_must_not_collide_with_core():
    core = default_rules().rules
    with pytest.raises(ConfigError):
        RuleSet(core, extensions=(Rule("work", (("ignored",),)),))


def test_other_never_carries_patterns():
    with pytest.raises(ConfigError):
        RuleSet(default_rules().rules + (Rule("other", (("something",),)),))


def test_all_core_categories_required():
    with pytest.raises(ConfigError):
        RuleSet(default_rules().rules[:2])


def test_non_core_rule_category_rejected():
    with pytest.raises(ConfigError, match="extensions"):
        RuleSet(default_rules().rules + (Rule("gadgets", (("gadget",),)),))


def test_tokenize_splits_on_non_alphanumerics():
    assert tokenize("457/visa,progress") == ["457", "visa", "progress"]
    assert tokenize("e-Visitor") == ["e", "visitor"]
