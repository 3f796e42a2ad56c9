"""Timed-transcript JSON reader.

Schema::

    {"utterances": [
        {"speaker": str, "start": num, "end": num,
         "words": [{"text": str, "start": num, "end": num}, ...]},
        ...]}

Times are seconds. ``words`` may be empty. Unknown keys are rejected.
"""
from __future__ import annotations

import json

from ..errors import ParseError, ValidationError
from ..model import TimedTranscript, TimedWord, Utterance

_UTTERANCE_KEYS = {"speaker", "start", "end", "words"}
_WORD_KEYS = {"text", "start", "end"}


def _check_keys(obj, required, path):
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", path)
    extra = sorted(set(obj) - required)
    if extra:
        raise ValidationError(f"unknown key(s) {extra}", path)
    missing = sorted(required - set(obj))
    if missing:
        raise ValidationError(f"missing key(s) {missing}", path)


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"expected a number, got {type(value).__name__}", path)
    return float(value)


def _string(value, path):
    if not isinstance(value, str):
        raise ValidationError(f"expected a string, got {type(value).__name__}", path)
    return value


def _word(obj, path):
    _check_keys(obj, _WORD_KEYS, path)
    text = _string(obj["text"], f"{path}.text")
    start = _number(obj["start"], f"{path}.start")
    end = _number(obj["end"], f"{path}.end")
    try:
        return TimedWord(text, start, end)
    except ValidationError as exc:
        raise ValidationError(exc.message, path) from None


def _utterance(obj, path):
    _check_keys(obj, _UTTERANCE_KEYS, path)
    speaker = _string(obj["speaker"], f"{path}.speaker")
    start = _number(obj["start"], f"{path}.start")
    end = _number(obj["end"], f"{path}.end")
    if not isinstance(obj["words"], list):
        raise ValidationError("expected an array", f"{path}.words")
    words = [_word(w, f"{path}.words[{i}]") for i, w in enumerate(obj["words"])]
    try:
        return Utterance(speaker, start, end, tuple(words))
    except ValidationError as exc:
        inner = f"{path}.{exc.path}" if exc.path else path
        raise ValidationError(exc.message, inner) from None


def parse_timed_json(text: str) -> TimedTranscript:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    _check_keys(data, {"utterances"}, "$")
    if not isinstance(data["utterances"], list):
        raise ValidationError("expected an array", "utterances")
    utterances = [
        _utterance(u, f"utterances[{i}]") for i, u in enumerate(data["utterances"])
    ]
    return TimedTranscript(tuple(utterances))


def dump_timed_json(transcript: TimedTranscript) -> str:
    return json.dumps(
        {
            "utterances": [
                {
                    "speaker": u.speaker,
                    "start": u.start,
                    "end": u.end,
                    "words": [{"text": w.text, "start": w.start, "end": w.end} for w in u.words],
                }
                for u in transcript.utterances
            ]
        },
        indent=1,
    )
