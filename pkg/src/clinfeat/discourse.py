"""Discourse and pragmatic features."""
from __future__ import annotations

from .model import NA, Document, Value


def discourse_marker_count(doc: Document) -> int:
    """Tokens attached to their head with the ``discourse`` relation (subtypes included)."""
    return sum(1 for t in doc.tokens() if t.relation == "discourse")


def discourse_marker_rate(doc: Document) -> Value:
    if not doc.sentences:
        return NA
    return discourse_marker_count(doc) / len(doc.sentences)
