"""Morphosyntactic and syntactic features.

Morphology- and dependency-based proportions read token annotations; phrase
counts, Yngve depth and tree height read constituency trees. Phrase and
clause rates are per sentence. Per-sentence tree statistics are averaged
over sentences to give document values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from statistics import fmean
from typing import Iterable

from .errors import FeatureUnavailable
from .model import NA, ConstituencyNode, Document, Value

_FUNCTIONAL_SUFFIX = re.compile(r"^([^-=]+)[-=].*$")


def strip_functional(label: str) -> str:
    """``NP-SBJ-1`` -> ``NP``; ``-NONE-`` and ``-LRB-`` are left alone."""
    return _FUNCTIONAL_SUFFIX.sub(r"\1", label)


@dataclass(frozen=True)
class ConstituentLabelConfig:
    clause_labels: frozenset = frozenset({"S", "SINV", "SQ", "SBARQ", "SBAR"})
    dependent_clause_labels: frozenset = frozenset({"SBAR"})
    np_labels: frozenset = frozenset({"NP"})
    vp_labels: frozenset = frozenset({"VP"})
    pp_labels: frozenset = frozenset({"PP"})
    infinitive_marker_tag: str = "TO"

    def __post_init__(self):
        for name in ("clause_labels", "dependent_clause_labels", "np_labels", "vp_labels", "pp_labels"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.dependent_clause_labels <= self.clause_labels:
            raise ValueError("dependent_clause_labels must be a subset of clause_labels")

    @classmethod
    def from_mapping(cls, data) -> "ConstituentLabelConfig":
        data = dict(data or {})
        known = {
            "clause_labels", "dependent_clause_labels", "np_labels",
            "vp_labels", "pp_labels", "infinitive_marker_tag",
        }
        unknown = set(data) - known
        if unknown:
            raise KeyError(f"unknown syntax keys: {sorted(unknown)}")
        kwargs = {}
        for key, value in data.items():
            if key == "infinitive_marker_tag":
                if not isinstance(value, str):
                    raise TypeError("infinitive_marker_tag must be a string")
                kwargs[key] = value
            else:
                if isinstance(value, str) or not isinstance(value, (list, tuple, set)):
                    raise TypeError(f"{key} must be a list of labels")
                kwargs[key] = frozenset(str(v) for v in value)
        return cls(**kwargs)


# -- morphology and dependencies ------------------------------------------


def morph_proportion(doc: Document, key: str, value: str, base_upos: str = "VERB") -> Value:
    base = [t for t in doc.tokens() if t.upos == base_upos]
    if not base:
        return NA
    return sum(1 for t in base if t.has_feature(key, value)) / len(base)


def auxiliary_proportion(doc: Document) -> Value:
    """#AUX / #VERB. Not bounded by 1."""
    n_verb = sum(1 for t in doc.tokens() if t.upos == "VERB")
    if n_verb == 0:
        return NA
    return sum(1 for t in doc.tokens() if t.upos == "AUX") / n_verb


def noun_modifier_proportion(doc: Document, relation: str) -> Value:
    """Fraction of NOUN tokens with at least one dependent whose base relation is ``relation``."""
    n_nouns = 0
    modified = 0
    for sent in doc.sentences:
        heads = {t.head for t in sent.tokens if t.relation == relation}
        for t in sent.tokens:
            if t.upos == "NOUN":
                n_nouns += 1
                modified += t.index in heads
    if n_nouns == 0:
        return NA
    return modified / n_nouns


# -- constituency ----------------------------------------------------------


def _trees(doc: Document) -> list[ConstituencyNode]:
    if not doc.sentences:
        raise FeatureUnavailable("document has no sentences")
    if not doc.has_constituency:
        missing = sum(1 for s in doc.sentences if s.constituency is None)
        raise FeatureUnavailable(f"{missing} sentence(s) lack a constituency tree")
    return [s.constituency for s in doc.sentences]


def count_labels(tree: ConstituencyNode, labels: Iterable[str]) -> int:
    labels = frozenset(labels)
    return sum(
        1 for n in tree.iter_nodes() if not n.is_leaf and strip_functional(n.label) in labels
    )


def count_constituents(doc: Document, labels: Iterable[str]) -> int:
    labels = frozenset(labels)
    return sum(count_labels(t, labels) for t in _trees(doc))


def _first_preterminal(node: ConstituencyNode) -> ConstituencyNode:
    while not node.children[0].is_leaf:
        node = node.children[0]
    return node


def count_infinitives(tree: ConstituencyNode, cfg: ConstituentLabelConfig = ConstituentLabelConfig()) -> int:
    """VPs whose leftmost terminal sits under an infinitive-marker preterminal."""
    count = 0
    for n in tree.iter_nodes():
        if n.is_leaf or strip_functional(n.label) not in cfg.vp_labels:
            continue
        if strip_functional(_first_preterminal(n).label) == cfg.infinitive_marker_tag:
            count += 1
    return count


def count_infinitive_phrases(doc: Document, cfg: ConstituentLabelConfig = ConstituentLabelConfig()) -> int:
    return sum(count_infinitives(t, cfg) for t in _trees(doc))


def constituent_rate(count: int, n_sentences: int) -> Value:
    if n_sentences < 1:
        return NA
    return count / n_sentences


def yngve_leaf_depths(tree: ConstituencyNode) -> list[int]:
    """Yngve depth of each leaf, left to right.

    A leaf's depth is the number of right siblings summed over every node on
    its path from the root.
    """
    depths = []
    stack = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        if node.is_leaf:
            depths.append(depth)
            continue
        k = len(node.children)
        # push right-to-left so leaves come out left-to-right
        for i in range(k - 1, -1, -1):
            stack.append((node.children[i], depth + (k - 1 - i)))
    return depths


@dataclass(frozen=True)
class YngveStats:
    max_depth: float
    mean_depth: float
    total_depth: float


def yngve_stats(doc: Document) -> YngveStats:
    per_sentence = [yngve_leaf_depths(t) for t in _trees(doc)]
    return YngveStats(
        max_depth=fmean(max(d) for d in per_sentence),
        mean_depth=fmean(sum(d) / len(d) for d in per_sentence),
        total_depth=fmean(sum(d) for d in per_sentence),
    )


def tree_height(tree: ConstituencyNode) -> int:
    """Nodes on the longest root-to-leaf path; a lone leaf has height 1."""
    best = 0
    stack = [(tree, 1)]
    while stack:
        node, h = stack.pop()
        if node.is_leaf:
            best = max(best, h)
        else:
            stack.extend((c, h + 1) for c in node.children)
    return best


def parse_tree_height(doc: Document) -> float:
    return fmean(tree_height(t) for t in _trees(doc))
