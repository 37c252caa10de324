"""Topic categorization rules for call dispositions and post text.

A rule set is an ordered list of (category, patterns). Every pattern is a
token or a phrase; matching is case-insensitive and token-bounded, so the
numeric subclass "560" matches "560 visa" but never "5600" or "visa1560".
Call records get exactly one category (first rule wins, "other" fallback);
posts get the set of all matching categories. Extension categories are
keyword overlays on top of the six core categories and never change the
core partition.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import yaml

from .errors import ConfigError

CORE_CATEGORIES = ("study", "visit", "work", "permanent", "citizen", "other")
FALLBACK_CATEGORY = "other"

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lower-case alphanumeric tokens of ``text`` (separators discarded)."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Rule:
    """One category with its ordered match patterns (token sequences)."""

    category: str
    patterns: tuple[tuple[str, ...], ...]


class _PatternIndex:
    """First-token index over token-sequence patterns for fast scanning."""

    def __init__(self, rules: Iterable[Rule]):
        # first token -> list of (pattern tokens, rule order, category)
        self._heads: dict[str, list[tuple[tuple[str, ...], int, str]]] = {}
        for order, rule in enumerate(rules):
            for pattern in rule.patterns:
                self._heads.setdefault(pattern[0], []).append((pattern, order, rule.category))

    def matches(self, tokens: list[str]) -> list[tuple[int, str]]:
        """All (rule order, category) hits of any pattern in ``tokens``."""
        hits: list[tuple[int, str]] = []
        n = len(tokens)
        for i, tok in enumerate(tokens):
            for pattern, order, category in self._heads.get(tok, ()):
                plen = len(pattern)
                if plen == 1 or (i + plen <= n and tuple(tokens[i:i + plen]) == pattern):
                    hits.append((order, category))
        return hits


class RuleSet:
    """Immutable, ordered categorization rules plus optional overlays.

    Safe to share across threads; all matching methods are pure.
    """

    def __init__(self, rules: Iterable[Rule], extensions: Iterable[Rule] = ()):
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.extensions: tuple[Rule, ...] = tuple(extensions)
        self._validate()
        self._core_index = _PatternIndex(self.rules)
        self._ext_index = _PatternIndex(self.extensions)

    def _validate(self) -> None:
        seen = set()
        for rule in self.rules:
            if rule.category == FALLBACK_CATEGORY:
                raise ConfigError('"other" is the fallback and must not carry patterns')
            if rule.category not in CORE_CATEGORIES:
                raise ConfigError(f"{rule.category!r} is not a core category; "
                                  "new topics belong under 'extensions'")
            if rule.category in seen:
                raise ConfigError(f"duplicate rule category: {rule.category}")
            if not rule.patterns:
                raise ConfigError(f"rule {rule.category!r} has no patterns")
            seen.add(rule.category)
        missing = [c for c in CORE_CATEGORIES if c != FALLBACK_CATEGORY and c not in seen]
        if missing:
            raise ConfigError(f"core categories without rules: {', '.join(missing)}")
        for ext in self.extensions:
            if ext.category in CORE_CATEGORIES:
                raise ConfigError(f"extension name collides with a core category: {ext.category}")

    @property
    def categories(self) -> tuple[str, ...]:
        """Core categories first (rule order plus fallback), then extensions."""
        core = tuple(r.category for r in self.rules) + (FALLBACK_CATEGORY,)
        return core + tuple(e.category for e in self.extensions)

    @property
    def core_categories(self) -> tuple[str, ...]:
        return tuple(r.category for r in self.rules) + (FALLBACK_CATEGORY,)

    def __contains__(self, category: str) -> bool:
        return category in self.categories

    def first_match(self, text: str) -> str:
        """Category of the earliest-ordered rule matching ``text``, else "other"."""
        hits = self._core_index.matches(tokenize(text))
        if not hits:
            return FALLBACK_CATEGORY
        return min(hits)[1]

    def all_matches(self, text: str) -> set[str]:
        """Every core category with at least one pattern hit in ``text``."""
        return {category for _, category in self._core_index.matches(tokenize(text))}

    def overlay_matches(self, text: str) -> set[str]:
        """Extension categories with at least one keyword hit in ``text``."""
        return {category for _, category in self._ext_index.matches(tokenize(text))}


def _parse_rule_entries(entries: object, where: str) -> list[Rule]:
    if entries is None:
        return []
    if not isinstance(entries, list):
        raise ConfigError(f"{where} must be a list")
    rules = []
    for entry in entries:
        if not isinstance(entry, dict) or "category" not in entry:
            raise ConfigError(f"each {where} entry needs a category name")
        patterns = entry.get("patterns") or []
        compiled = []
        for pat in patterns:
            tokens = tuple(tokenize(str(pat)))
            if not tokens:
                raise ConfigError(f"empty pattern under {entry['category']!r}")
            compiled.append(tokens)
        rules.append(Rule(category=str(entry["category"]), patterns=tuple(compiled)))
    return rules


def load_rules(path: str | Path | None = None) -> RuleSet:
    """Load a rule set from a YAML file, or the shipped defaults when omitted."""
    if path is None:
        text = resources.files("couplekit").joinpath("data/default_rules.yaml").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"rules file is not valid YAML: {exc}") from None
    if not isinstance(doc, dict) or "rules" not in doc:
        raise ConfigError("rules file must contain a top-level 'rules' list")
    return RuleSet(
        rules=_parse_rule_entries(doc["rules"], "rules"),
        extensions=_parse_rule_entries(doc.get("extensions"), "extensions"),
    )


def default_rules() -> RuleSet:
    return load_rules(None)
