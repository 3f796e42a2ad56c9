"""Phonetic and phonological features computed from timed transcripts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import FeatureUnavailable
from .model import NA, TimedTranscript, Value


@dataclass(frozen=True)
class PauseConfig:
    threshold: float = 0.25
    hesitation_threshold: float = 0.25

    def __post_init__(self):
        if not self.threshold > 0 or not self.hesitation_threshold > 0:
            raise ValueError("pause thresholds must be positive")

    @classmethod
    def from_mapping(cls, data) -> "PauseConfig":
        data = dict(data or {})
        kwargs = {}
        if "pause_threshold_s" in data:
            kwargs["threshold"] = float(data.pop("pause_threshold_s"))
        if "hesitation_threshold_s" in data:
            kwargs["hesitation_threshold"] = float(data.pop("hesitation_threshold_s"))
        if data:
            raise KeyError(f"unknown phonology keys: {sorted(data)}")
        return cls(**kwargs)


@dataclass(frozen=True)
class PauseSummary:
    count: int
    total: float
    mean: Value
    gaps: tuple = field(default=())


def _require_word_timings(transcript: TimedTranscript):
    if not transcript.utterances:
        raise FeatureUnavailable("transcript has no utterances")
    if not transcript.has_word_timings:
        raise FeatureUnavailable("transcript lacks word-level timings")


def inter_word_gaps(transcript: TimedTranscript) -> list[tuple[float, float]]:
    """(end of word, start of next word) for every consecutive pair, in time order."""
    words = transcript.words()
    return [(a.end, b.start) for a, b in zip(words, words[1:])]


def detect_pauses(
    transcript: TimedTranscript,
    cfg: PauseConfig = PauseConfig(),
    *,
    threshold: Optional[float] = None,
) -> PauseSummary:
    """Silent gaps between consecutive words lasting at least the threshold.

    ``threshold`` overrides ``cfg.threshold``; unlike the config it may be 0,
    in which case every non-negative gap counts.
    """
    _require_word_timings(transcript)
    limit = cfg.threshold if threshold is None else threshold
    gaps = tuple((s, e) for s, e in inter_word_gaps(transcript) if e - s >= limit)
    total = sum(e - s for s, e in gaps)
    mean = total / len(gaps) if gaps else NA
    return PauseSummary(len(gaps), total, mean, gaps)


def locution_phonation(transcript: TimedTranscript) -> tuple[Value, Value, Value]:
    """(total locution time, total phonation time, standardized phonation time)."""
    if not transcript.utterances:
        return NA, NA, NA
    _require_word_timings(transcript)
    words = transcript.words()
    locution = max(w.end for w in words) - words[0].start
    phonation = sum(w.duration for w in words)
    standardized = phonation / locution if locution > 0 else NA
    return locution, phonation, standardized


def speech_rates(transcript: TimedTranscript) -> tuple[Value, Value]:
    """(speech rate, maximum speech rate) in words per minute."""
    utts = transcript.utterances
    if not utts:
        raise FeatureUnavailable("transcript has no utterances")
    n_words = sum(u.word_count for u in utts)
    if transcript.has_word_timings:
        locution = locution_phonation(transcript)[0]
    else:
        locution = max(u.end for u in utts) - utts[0].start
    rate = 60.0 * n_words / locution if locution > 0 else NA
    per_utt = [60.0 * u.word_count / u.duration for u in utts if u.duration > 0]
    return rate, (max(per_utt) if per_utt else NA)


def between_utterance_pause(transcript: TimedTranscript) -> Value:
    utts = transcript.utterances
    if len(utts) < 2:
        return NA
    gaps = [max(0.0, b.start - a.end) for a, b in zip(utts, utts[1:])]
    return sum(gaps) / len(gaps)


def hesitation_ratio(transcript: TimedTranscript, cfg: PauseConfig = PauseConfig()) -> Value:
    try:
        locution = locution_phonation(transcript)[0]
        pauses = detect_pauses(transcript, threshold=cfg.hesitation_threshold)
    except FeatureUnavailable:
        return NA
    if locution is NA or locution <= 0:
        return NA
    return pauses.total / locution
