"""Lexicosemantic features: part-of-speech rates, ratios and vocabulary richness.

All rates use word tokens (UPOS other than PUNCT, SYM, X) as the denominator.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import FeatureUnavailable
from .model import NA, Document, Token, Value

OPEN_CLASS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV", "INTJ"})
CLOSED_CLASS = frozenset({"ADP", "AUX", "CCONJ", "SCONJ", "DET", "PART", "PRON"})
IDEA_BEARING = frozenset({"VERB", "ADJ", "ADV", "ADP", "CCONJ", "SCONJ"})

Selector = Callable[[Token], bool]


def upos_in(*tags: str) -> Selector:
    wanted = frozenset(tags)
    return lambda tok: tok.upos in wanted


def has_morph(key: str, value: str) -> Selector:
    return lambda tok: tok.has_feature(key, value)


RATE_SELECTORS: dict[str, Selector] = {
    "noun_rate": upos_in("NOUN"),
    "verb_rate": upos_in("VERB"),
    "demonstrative_rate": has_morph("PronType", "Dem"),
    "adjective_rate": upos_in("ADJ"),
    "pronoun_rate": upos_in("PRON"),
    "adverb_rate": upos_in("ADV"),
    "conjunction_rate": upos_in("CCONJ", "SCONJ"),
    "possessive_rate": has_morph("Poss", "Yes"),
    "closed_class_word_rate": upos_in(*CLOSED_CLASS),
    "open_class_word_rate": upos_in(*OPEN_CLASS),
}

# numerator selector, denominator selector
RATIO_SELECTORS: dict[str, tuple[Selector, Selector]] = {
    "noun_verb_ratio": (upos_in("NOUN"), upos_in("VERB")),
    "noun_ratio": (upos_in("NOUN"), upos_in("NOUN", "VERB")),
    "pronoun_noun_ratio": (upos_in("PRON"), upos_in("NOUN")),
    "content_density": (upos_in(*OPEN_CLASS), upos_in(*CLOSED_CLASS)),
}


def _words(doc: Document) -> list[Token]:
    return doc.words()


def pos_rate(doc: Document, selector: Selector) -> Value:
    words = _words(doc)
    if not words:
        return NA
    return sum(1 for t in words if selector(t)) / len(words)


def pos_ratio(doc: Document, numerator: Selector, denominator: Selector) -> Value:
    words = _words(doc)
    den = sum(1 for t in words if denominator(t))
    if den == 0:
        return NA
    return sum(1 for t in words if numerator(t)) / den


@dataclass(frozen=True)
class VocabularyStats:
    n_tokens: int
    n_types: int
    n_hapax: int

    @classmethod
    def from_forms(cls, forms: Iterable[str]) -> "VocabularyStats":
        counts = Counter(f.casefold() for f in forms)
        return cls(
            n_tokens=sum(counts.values()),
            n_types=len(counts),
            n_hapax=sum(1 for c in counts.values() if c == 1),
        )


def vocabulary_stats(doc: Document) -> VocabularyStats:
    words = _words(doc)
    if not words:
        raise FeatureUnavailable("document has no word tokens")
    return VocabularyStats.from_forms(t.surface for t in words)


def honore(stats: VocabularyStats) -> Value:
    """Honoré's R = 100 ln N / (1 - V1/V), natural log; NA when every type is a hapax."""
    if stats.n_tokens < 1:
        return NA
    if stats.n_hapax == stats.n_types:
        return NA
    return 100.0 * math.log(stats.n_tokens) / (1.0 - stats.n_hapax / stats.n_types)


def brunet(stats: VocabularyStats) -> Value:
    """Brunet's W = N ** (V ** -0.165)."""
    if stats.n_tokens < 1 or stats.n_types < 1:
        return NA
    return stats.n_tokens ** (stats.n_types ** -0.165)


def type_token_ratio(stats: VocabularyStats) -> Value:
    if stats.n_tokens < 1:
        return NA
    return stats.n_types / stats.n_tokens


def idea_density(doc: Document) -> Value:
    return pos_rate(doc, upos_in(*IDEA_BEARING))


def mean_word_length(doc: Document) -> Value:
    words = _words(doc)
    if not words:
        return NA
    # len() on str counts code points
    return sum(len(t.surface) for t in words) / len(words)
