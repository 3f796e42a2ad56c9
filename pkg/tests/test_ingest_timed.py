import json

import pytest

from clinfeat.errors import ParseError, ValidationError
from clinfeat.ingest import dump_timed_json, parse_timed_json


def doc(*utts):
    return json.dumps({"utterances": list(utts)})


def utt(start, end, words=(), speaker="PAR"):
    return {
        "speaker": speaker, "start": start, "end": end,
        "words": [{"text": t, "start": s, "end": e} for t, s, e in words],
    }


def test_minimal():
    tr = parse_timed_json(doc(utt(1.0, 2.3, [("a", 1.0, 1.4), ("b", 2.0, 2.3)])))
    assert len(tr.utterances) == 1
    assert len(tr.utterances[0].words) == 2


def test_empty_words_allowed():
    tr = parse_timed_json(doc(utt(0, 1)))
    assert tr.utterances[0].words == ()
    assert not tr.has_word_timings


def test_sorted_by_start():
    tr = parse_timed_json(doc(utt(5, 6, speaker="B"), utt(1, 2, speaker="A")))
    assert [u.speaker for u in tr.utterances] == ["A", "B"]


def test_reversed_word_reports_path():
    with pytest.raises(ValidationError) as err:
        parse_timed_json(doc(utt(0, 3, [("a", 2.0, 1.0)])))
    assert err.value.path == "utterances[0].words[0]"


def test_overlapping_words():
    with pytest.raises(ValidationError) as err:
        parse_timed_json(doc(utt(0, 3, [("a", 0.0, 1.0), ("b", 0.5, 2.0)])))
    assert err.value.path == "utterances[0].words[1]"


def test_utterance_end_before_start():
    with pytest.raises(ValidationError) as err:
        parse_timed_json(doc(utt(0, 3), utt(5, 4)))
    assert err.value.path == "utterances[1]"


@pytest.mark.parametrize(
    "payload, path",
    [
        ({"utterances": [], "extra": 1}, "$"),
        ({}, "$"),
        ({"utterances": {}}, "utterances"),
        ({"utterances": [{"speaker": "A", "start": 0, "end": 1, "words": [], "x": 0}]}, "utterances[0]"),
        ({"utterances": [{"speaker": "A", "start": "0", "end": 1, "words": []}]}, "utterances[0].start"),
        ({"utterances": [{"speaker": "A", "start": True, "end": 1, "words": []}]}, "utterances[0].start"),
        ({"utterances": [{"speaker": 3, "start": 0, "end": 1, "words": []}]}, "utterances[0].speaker"),
        ({"utterances": [utt(0, 1, [("a", 0, 1)]) | {"words": [{"text": "a", "start": 0}]}]},
         "utterances[0].words[0]"),
    ],
)
def test_schema_violations_name_path(payload, path):
    with pytest.raises(ValidationError) as err:
        parse_timed_json(json.dumps(payload))
    assert err.value.path == path


def test_bad_json():
    with pytest.raises(ParseError):
        parse_timed_json("{not json")


def test_dump_round_trip():
    text = doc(utt(0, 3, [("a", 0.0, 1.0), ("b", 1.5, 2.0)]), utt(4, 5))
    tr = parse_timed_json(text)
    assert parse_timed_json(dump_timed_json(tr)) == tr
