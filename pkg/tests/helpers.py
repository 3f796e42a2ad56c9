"""Small builders for hand-made test documents."""
from clinfeat.ingest.conllu import parse_feats
from clinfeat.ingest.trees import parse_bracketed_tree
from clinfeat.model import Document, Sentence, TimedTranscript, TimedWord, Token, Utterance


def sent(*rows, tree=None, sent_id=None):
    """rows: (surface, upos, head, deprel[, feats])."""
    tokens = []
    for i, row in enumerate(rows, start=1):
        surface, upos, head, deprel = row[:4]
        feats = parse_feats(row[4]) if len(row) > 4 else {}
        tokens.append(Token(surface, surface.lower(), upos, feats, head, deprel, i))
    if isinstance(tree, str):
        tree = parse_bracketed_tree(tree)[0]
    return Sentence(tuple(tokens), tree, sent_id)


def doc(*sentences, transcript=None, doc_id="d"):
    return Document(doc_id, tuple(sentences), transcript)


def flat(*pairs, root=None):
    """Sentence of (surface, upos) tokens all attached to the first one."""
    rows = [(s, u, 0 if i == 0 else 1, "root" if i == 0 else "dep") for i, (s, u) in enumerate(pairs)]
    return sent(*rows)


def transcript(*utterances, speaker="PAR"):
    """utterances: (start, end, [(text, start, end), ...])."""
    return TimedTranscript(
        tuple(
            Utterance(speaker, s, e, tuple(TimedWord(*w) for w in words))
            for s, e, words in utterances
        )
    )


def words_transcript(*spans):
    """One utterance per word span, e.g. words_transcript((0, 1), (2, 3))."""
    return transcript(*[(s, e, [("w", s, e)]) for s, e in spans])


def reproduces_count(rate, count, n):
    """rate is the correctly rounded count/n, so rate * n recovers count.

    Float multiplication can land one ulp off (29/7*7 != 29), hence the round().
    """
    return rate == count / n and round(rate * n) == count
