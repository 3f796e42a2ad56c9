import pytest
from hypothesis import given, strategies as st

from clinfeat.errors import ParseError, StructuralError
from clinfeat.ingest import parse_conllu


def line(*cols):
    return "\t".join(str(c) for c in cols)


def row(i, form, upos, head, rel, feats="_"):
    return line(i, form, form, upos, "_", feats, head, rel, "_", "_")


def test_minimal_block():
    text = "\n".join([row(1, "the", "DET", 2, "det"), row(2, "dog", "NOUN", 0, "root")]) + "\n"
    [s] = parse_conllu(text)
    assert [t.surface for t in s.tokens] == ["the", "dog"]
    roots = [t.index for t in s.tokens if t.head == 0]
    assert roots == [2]


def test_multiword_range_and_empty_nodes_skipped():
    text = "\n".join(
        [
            "# sent_id = a1",
            "# text = I don't",
            row(1, "I", "PRON", 3, "nsubj"),
            line("2-3", "don't", "_", "_", "_", "_", "_", "_", "_", "_"),
            row(2, "do", "AUX", 3, "aux"),
            row(3, "n't", "PART", 0, "root"),
            line("3.1", "x", "x", "X", "_", "_", "_", "_", "_", "_"),
        ]
    )
    [s] = parse_conllu(text)
    assert len(s.tokens) == 3
    assert [t.index for t in s.tokens] == [1, 2, 3]
    assert s.sent_id == "a1"


def test_feats_split():
    [s] = parse_conllu(row(1, "this", "PRON", 0, "root", "PronType=Dem|Number=Sing"))
    assert dict(s.tokens[0].morph) == {"PronType": "Dem", "Number": "Sing"}


def test_subtype_kept_in_storage():
    text = "\n".join([row(1, "all", "DET", 2, "det:predet"), row(2, "dogs", "NOUN", 0, "root")])
    [s] = parse_conllu(text)
    assert s.tokens[0].deprel == "det:predet"
    assert s.tokens[0].relation == "det"


def test_sentence_blocks_split_on_blank_lines():
    one = row(1, "hi", "INTJ", 0, "root")
    assert len(parse_conllu(f"{one}\n\n{one}\n\n\n{one}\n")) == 3


def test_wrong_column_count_reports_line():
    text = "# c\n" + row(1, "a", "DET", 0, "root") + "\n1\tb\tb\n"
    with pytest.raises(ParseError) as err:
        parse_conllu(text)
    assert err.value.line == 3


def test_bad_head_names_sentence():
    text = "# sent_id = s9\n" + "\n".join([row(1, "a", "DET", 5, "det"), row(2, "b", "NOUN", 0, "root")])
    with pytest.raises(StructuralError, match="s9"):
        parse_conllu(text)


def test_unknown_upos():
    with pytest.raises(ParseError):
        parse_conllu(row(1, "a", "DT", 0, "root"))


@st.composite
def conllu_sentence(draw):
    n = draw(st.integers(1, 12))
    root = draw(st.integers(1, n))
    rows = []
    for i in range(1, n + 1):
        head = 0 if i == root else draw(st.integers(1, n).filter(lambda h, i=i: h != i))
        rows.append(row(i, f"w{i}", draw(st.sampled_from(["NOUN", "VERB", "PUNCT"])), head, "dep"))
    return "\n".join(rows)


@given(st.lists(conllu_sentence(), min_size=1, max_size=4))
def test_indices_contiguous(blocks):
    sentences = parse_conllu("\n\n".join(blocks) + "\n")
    assert len(sentences) == len(blocks)
    for s in sentences:
        assert [t.index for t in s.tokens] == list(range(1, len(s.tokens) + 1))
