"""In-memory data model for annotated documents.

Everything here is immutable after construction, so documents can be shared
freely between worker threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Sequence, Union

from .errors import StructuralError, ValidationError

UPOS_TAGS = frozenset(
    {
        "NOUN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET", "ADP", "CCONJ",
        "SCONJ", "PART", "PROPN", "INTJ", "NUM", "PUNCT", "SYM", "X",
    }
)

# Tokens with these tags are not counted as words in any rate denominator.
NON_WORD_UPOS = frozenset({"PUNCT", "SYM", "X"})


class NAType:
    """Missing-value marker. Distinct from every float, including 0.0 and nan."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NA"

    def __bool__(self):
        raise TypeError("truth value of NA is ambiguous")

    def __reduce__(self):
        return (NAType, ())


NA = NAType()

Value = Union[float, NAType]


def is_na(value) -> bool:
    return value is NA


def base_relation(deprel: str) -> str:
    """``'acl:relcl'`` -> ``'acl'``."""
    return deprel.split(":", 1)[0]


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    upos: str
    morph: Mapping[str, str]
    head: int
    deprel: str
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise StructuralError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise StructuralError(f"token {self.index}: negative head {self.head}")
        if self.head == self.index:
            raise StructuralError(f"token {self.index} is its own head")
        if self.upos not in UPOS_TAGS:
            raise StructuralError(f"token {self.index}: unknown UPOS tag {self.upos!r}")
        object.__setattr__(self, "morph", MappingProxyType(dict(self.morph)))

    def __hash__(self):
        return hash((self.surface, self.upos, self.head, self.deprel, self.index))

    @property
    def relation(self) -> str:
        return base_relation(self.deprel)

    @property
    def is_word(self) -> bool:
        return self.upos not in NON_WORD_UPOS

    def has_feature(self, key: str, value: str) -> bool:
        return self.morph.get(key) == value


@dataclass(frozen=True, eq=False)
class ConstituencyNode:
    """A node of a constituency tree.

    Leaves carry ``leaf_text`` and no children; their ``label`` is the leaf text.
    """

    label: str
    children: tuple = ()
    leaf_text: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if (self.leaf_text is None) == (len(self.children) == 0):
            raise StructuralError(
                f"node {self.label!r}: a node is a leaf iff it has leaf_text and no children"
            )

    @classmethod
    def leaf(cls, text: str) -> "ConstituencyNode":
        return cls(text, (), text)

    @property
    def is_leaf(self) -> bool:
        return self.leaf_text is not None

    def leaves(self) -> list[str]:
        out = []
        stack = [self]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node.leaf_text)
            else:
                stack.extend(reversed(node.children))
        return out

    def iter_nodes(self) -> Iterator["ConstituencyNode"]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __eq__(self, other):
        if not isinstance(other, ConstituencyNode):
            return NotImplemented
        return (
            self.label == other.label
            and self.leaf_text == other.leaf_text
            and self.children == other.children
        )

    def __hash__(self):
        return hash((self.label, self.leaf_text, len(self.children)))


@dataclass(frozen=True)
class Sentence:
    tokens: tuple = ()
    constituency: Optional[ConstituencyNode] = None
    sent_id: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        name = self.sent_id or "<unnamed>"
        n = len(self.tokens)
        if n:
            roots = [t.index for t in self.tokens if t.head == 0]
            if len(roots) != 1:
                raise StructuralError(
                    f"sentence {name}: expected exactly one root, found {len(roots)}"
                )
            for t in self.tokens:
                if t.head > n:
                    raise StructuralError(
                        f"sentence {name}: token {t.index} has head {t.head} "
                        f"but the sentence has {n} tokens"
                    )
            # Trees-only sentences carry no tokens; the leaf check needs both layers.
            if self.constituency is not None:
                n_leaves = len(self.constituency.leaves())
                if n_leaves != n:
                    raise StructuralError(
                        f"sentence {name}: constituency tree has {n_leaves} leaves "
                        f"but there are {n} tokens"
                    )

    @property
    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word]


@dataclass(frozen=True)
class TimedWord:
    text: str
    start: float
    end: float

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValidationError("word times must be finite")
        if self.start < 0:
            raise ValidationError(f"word {self.text!r}: negative start {self.start}")
        if self.end < self.start:
            raise ValidationError(
                f"word {self.text!r}: end {self.end} precedes start {self.start}"
            )

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class Utterance:
    """One speaker turn.

    ``text`` holds the transcript text when it is known but word-level timing
    is not (e.g. CHAT main tiers with a single time bullet).
    """

    speaker: str
    start: float
    end: float
    words: tuple = ()
    text: str = ""

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValidationError("utterance times must be finite")
        if self.start < 0:
            raise ValidationError(f"negative start {self.start}")
        if self.end < self.start:
            raise ValidationError(f"end {self.end} precedes start {self.start}")
        for i, w in enumerate(self.words):
            if w.start < self.start or w.end > self.end:
                raise ValidationError(
                    f"word {w.text!r} [{w.start}, {w.end}] lies outside the "
                    f"utterance [{self.start}, {self.end}]",
                    f"words[{i}]",
                )
            if i and self.words[i - 1].end > w.start:
                raise ValidationError(
                    f"word {w.text!r} overlaps the previous word", f"words[{i}]"
                )

    @property
    def duration(self) -> float:
        return self.end - self.start

    @property
    def word_count(self) -> int:
        if self.words:
            return len(self.words)
        return sum(1 for tok in self.text.split() if any(c.isalnum() for c in tok))


@dataclass(frozen=True)
class TimedTranscript:
    utterances: tuple = ()

    def __post_init__(self):
        # sorted() is stable, so equal start times keep input order
        ordered = tuple(sorted(self.utterances, key=lambda u: u.start))
        object.__setattr__(self, "utterances", ordered)

    @property
    def speakers(self) -> list[str]:
        seen = []
        for u in self.utterances:
            if u.speaker not in seen:
                seen.append(u.speaker)
        return seen

    def for_speaker(self, speaker: Optional[str]) -> "TimedTranscript":
        if speaker is None:
            return self
        return TimedTranscript(tuple(u for u in self.utterances if u.speaker == speaker))

    @property
    def has_word_timings(self) -> bool:
        return bool(self.utterances) and all(u.words for u in self.utterances)

    def words(self) -> list[TimedWord]:
        """All words in time order."""
        out = [w for u in self.utterances for w in u.words]
        out.sort(key=lambda w: (w.start, w.end))
        return out


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple = ()
    transcript: Optional[TimedTranscript] = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("document id must be non-empty")
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def tokens(self) -> Iterator[Token]:
        for s in self.sentences:
            yield from s.tokens

    def words(self) -> list[Token]:
        return [t for t in self.tokens() if t.is_word]

    @property
    def has_dependencies(self) -> bool:
        return any(s.tokens for s in self.sentences)

    @property
    def has_constituency(self) -> bool:
        return bool(self.sentences) and all(
            s.constituency is not None for s in self.sentences
        )


def merge_layers(
    doc_id: str,
    dependency: Sequence[Sentence] = (),
    trees: Sequence[ConstituencyNode] = (),
    transcript: Optional[TimedTranscript] = None,
) -> Document:
    """Assemble a document from separately parsed layers.

    Trees are paired with dependency sentences by position; when only trees
    are given, each becomes a token-less sentence.
    """
    if dependency and trees:
        if len(dependency) != len(trees):
            raise StructuralError(
                f"{doc_id}: {len(dependency)} dependency sentences but {len(trees)} trees"
            )
        sentences = [
            Sentence(s.tokens, tree, s.sent_id) for s, tree in zip(dependency, trees)
        ]
    elif trees:
        sentences = [Sentence((), tree) for tree in trees]
    else:
        sentences = list(dependency)
    return Document(doc_id, tuple(sentences), transcript)
