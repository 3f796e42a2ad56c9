"""The canonical 53-feature catalog and the feature-vector container."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .model import NA, Value

PHONETIC = "phonetic_phonological"
LEXICOSEMANTIC = "lexicosemantic"
SYNTACTIC = "morphosyntactic_syntactic"
DISCOURSE = "discourse_pragmatic"

FAMILIES = (PHONETIC, LEXICOSEMANTIC, SYNTACTIC, DISCOURSE)


class FeatureInfo(NamedTuple):
    name: str
    family: str
    length_dependent: bool
    requires_constituency: bool
    requires_timing: bool


# (name, family, length-dependent, constituency-based)
_ROWS = [
    ("number_of_pauses", PHONETIC, True, False),
    ("total_pause_time", PHONETIC, True, False),
    ("mean_pause_duration", PHONETIC, False, False),
    ("between_utterance_pause_duration", PHONETIC, False, False),
    ("hesitation_ratio", PHONETIC, False, False),
    ("speech_rate", PHONETIC, False, False),
    ("maximum_speech_rate", PHONETIC, False, False),
    ("total_phonation_time", PHONETIC, True, False),
    ("standardized_phonation_time", PHONETIC, True, False),
    ("total_locution_time", PHONETIC, True, False),
    ("noun_rate", LEXICOSEMANTIC, False, False),
    ("verb_rate", LEXICOSEMANTIC, False, False),
    ("demonstrative_rate", LEXICOSEMANTIC, False, False),
    ("adjective_rate", LEXICOSEMANTIC, False, False),
    ("pronoun_rate", LEXICOSEMANTIC, False, False),
    ("adverb_rate", LEXICOSEMANTIC, False, False),
    ("conjunction_rate", LEXICOSEMANTIC, False, False),
    ("possessive_rate", LEXICOSEMANTIC, False, False),
    ("noun_verb_ratio", LEXICOSEMANTIC, False, False),
    ("noun_ratio", LEXICOSEMANTIC, False, False),
    ("pronoun_noun_ratio", LEXICOSEMANTIC, False, False),
    ("closed_class_word_rate", LEXICOSEMANTIC, False, False),
    ("open_class_word_rate", LEXICOSEMANTIC, False, False),
    ("content_density", LEXICOSEMANTIC, False, False),
    ("idea_density", LEXICOSEMANTIC, False, False),
    ("honores_statistic", LEXICOSEMANTIC, False, False),
    ("brunets_index", LEXICOSEMANTIC, False, False),
    ("type_token_ratio", LEXICOSEMANTIC, False, False),
    ("word_length", LEXICOSEMANTIC, False, False),
    ("proportion_of_inflected_verbs", SYNTACTIC, False, False),
    ("proportion_of_auxiliary_verbs", SYNTACTIC, False, False),
    ("proportion_of_gerund_verbs", SYNTACTIC, False, False),
    ("proportion_of_participles", SYNTACTIC, False, False),
    ("number_of_clauses", SYNTACTIC, True, True),
    ("clause_rate", SYNTACTIC, False, True),
    ("proportion_of_nouns_with_determiners", SYNTACTIC, False, False),
    ("proportion_of_nouns_with_adjectives", SYNTACTIC, False, False),
    ("number_of_noun_phrases", SYNTACTIC, True, True),
    ("noun_phrase_rate", SYNTACTIC, False, True),
    ("number_of_verb_phrases", SYNTACTIC, True, True),
    ("verb_phrase_rate", SYNTACTIC, False, True),
    ("number_of_infinitive_phrases", SYNTACTIC, True, True),
    ("infinitive_phrase_rate", SYNTACTIC, False, True),
    ("number_of_prepositional_phrases", SYNTACTIC, True, True),
    ("prepositional_phrase_rate", SYNTACTIC, False, True),
    ("number_of_dependent_clauses", SYNTACTIC, True, True),
    ("dependent_clause_rate", SYNTACTIC, False, True),
    ("max_yngve_depth", SYNTACTIC, False, True),
    ("mean_yngve_depth", SYNTACTIC, False, True),
    ("total_yngve_depth", SYNTACTIC, False, True),
    ("parse_tree_height", SYNTACTIC, False, True),
    ("number_of_discourse_markers", DISCOURSE, True, False),
    ("discourse_marker_rate", DISCOURSE, False, False),
]

CATALOG: tuple[FeatureInfo, ...] = tuple(
    FeatureInfo(name, family, dagger, corenlp, family == PHONETIC)
    for name, family, dagger, corenlp in _ROWS
)
FEATURE_NAMES: tuple[str, ...] = tuple(f.name for f in CATALOG)
BY_NAME: Mapping[str, FeatureInfo] = {f.name: f for f in CATALOG}
_POSITION = {name: i for i, name in enumerate(FEATURE_NAMES)}

# Verb-form features are undefined for languages without verb morphology.
VERB_FORM_FEATURES = frozenset(
    {
        "proportion_of_inflected_verbs",
        "proportion_of_auxiliary_verbs",
        "proportion_of_gerund_verbs",
        "proportion_of_participles",
    }
)


def feature_catalog() -> list[FeatureInfo]:
    return list(CATALOG)


def restricted_feature_list() -> list[str]:
    """Non-timing features that neither scale with text length nor depend on verb forms."""
    return [
        f.name
        for f in CATALOG
        if not f.requires_timing
        and not f.length_dependent
        and f.name not in VERB_FORM_FEATURES
    ]


def catalog_order(names: Iterable[str]) -> list[str]:
    return sorted(names, key=_POSITION.__getitem__)


@dataclass(frozen=True)
class FeatureVector(Mapping[str, Value]):
    """Ordered mapping from catalog feature name to a float or NA.

    Keys are always iterated in catalog order.
    """

    data: Mapping[str, Value]

    def __post_init__(self):
        unknown = [k for k in self.data if k not in _POSITION]
        if unknown:
            raise KeyError(f"not catalog features: {unknown}")
        ordered = {}
        for name in catalog_order(self.data):
            v = self.data[name]
            ordered[name] = v if v is NA else float(v)
        object.__setattr__(self, "data", ordered)

    @classmethod
    def all_na(cls, names: Iterable[str]) -> "FeatureVector":
        return cls({n: NA for n in names})

    def __getitem__(self, key: str) -> Value:
        return self.data[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def to_dict(self) -> dict:
        """JSON-ready dict; NA becomes None."""
        return {k: (None if v is NA else v) for k, v in self.data.items()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FeatureVector":
        return cls({k: (NA if v is None else v) for k, v in data.items()})

    def __repr__(self):
        return f"FeatureVector({dict(self.data)!r})"
