"""CoNLL-U reader for basic dependency trees."""
from __future__ import annotations

import re

from ..errors import ParseError, StructuralError
from ..model import UPOS_TAGS, Sentence, Token

_RANGE_ID = re.compile(r"^\d+-\d+$")
_EMPTY_ID = re.compile(r"^\d+\.\d+$")
_SENT_ID = re.compile(r"^#\s*sent_id\s*=\s*(.*?)\s*$")


def parse_feats(field: str) -> dict:
    """``'PronType=Dem|Number=Sing'`` -> ``{'PronType': 'Dem', 'Number': 'Sing'}``."""
    if field in ("", "_"):
        return {}
    feats = {}
    for pair in field.split("|"):
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ValueError(f"malformed feature {pair!r}")
        if key in feats:
            raise ValueError(f"feature {key!r} given twice")
        feats[key] = value
    return feats


def _build_sentence(rows, sent_id, ordinal):
    name = sent_id or f"#{ordinal}"
    n = len(rows)
    tokens = []
    for expected, (lineno, cols) in enumerate(rows, start=1):
        idx = int(cols[0])
        if idx != expected:
            raise ParseError(
                f"sentence {name}: token ids must be contiguous from 1, "
                f"expected {expected} got {idx}",
                line=lineno,
            )
        try:
            head = int(cols[6])
        except ValueError:
            raise ParseError(f"non-numeric HEAD {cols[6]!r}", line=lineno) from None
        if head > n:
            raise StructuralError(
                f"sentence {name}: token {idx} has HEAD {head}, "
                f"but the sentence has only {n} tokens"
            )
        if cols[3] not in UPOS_TAGS:
            raise ParseError(f"unknown UPOS tag {cols[3]!r}", line=lineno)
        try:
            morph = parse_feats(cols[5])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        try:
            tokens.append(
                Token(
                    surface=cols[1],
                    lemma=cols[2] if cols[2] != "_" else cols[1],
                    upos=cols[3],
                    morph=morph,
                    head=head,
                    deprel=cols[7],
                    index=idx,
                )
            )
        except StructuralError as exc:
            raise StructuralError(f"sentence {name}: {exc}") from None
    return Sentence(tuple(tokens), None, sent_id)


def parse_conllu(text: str) -> list[Sentence]:
    sentences = []
    rows = []
    sent_id = None

    def flush():
        nonlocal rows, sent_id
        if rows:
            sentences.append(_build_sentence(rows, sent_id, len(sentences) + 1))
        rows = []
        sent_id = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            m = _SENT_ID.match(line)
            if m:
                sent_id = m.group(1)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, found {len(cols)}", line=lineno)
        tid = cols[0]
        if _RANGE_ID.match(tid) or _EMPTY_ID.match(tid):
            continue
        if not tid.isdigit():
            raise ParseError(f"bad token id {tid!r}", line=lineno)
        rows.append((lineno, cols))
    flush()
    return sentences
