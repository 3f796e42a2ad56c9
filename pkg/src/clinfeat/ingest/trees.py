"""Penn-Treebank style bracketed tree reader and writer."""
from __future__ import annotations

from ..errors import ParseError
from ..model import ConstituencyNode

_DECODE = {"-LRB-": "(", "-RRB-": ")"}
_ENCODE = {"(": "-LRB-", ")": "-RRB-"}
_WRAPPERS = ("ROOT", "")


def _tokenize(text):
    """Yield (token, offset) where token is '(', ')' or an atom."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c, i
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j], i
            i = j


def parse_bracketed_tree(text: str) -> list[ConstituencyNode]:
    """Parse every top-level S-expression in ``text``.

    A single-child ``(ROOT ...)`` or unlabeled ``( ...)`` wrapper is removed.
    Leaves ``-LRB-``/``-RRB-`` are decoded to parentheses.
    """
    trees = []
    # each frame: [label or None, children, offset of '(']
    stack: list[list] = []
    for tok, off in _tokenize(text):
        if tok == "(":
            if stack and stack[-1][0] is None:
                # '((' : the enclosing node has an empty label
                stack[-1][0] = ""
            stack.append([None, [], off])
        elif tok == ")":
            if not stack:
                raise ParseError("unmatched ')'", offset=off)
            label, children, start = stack.pop()
            if label is None:
                raise ParseError("empty brackets '()'", offset=start)
            if not children:
                raise ParseError(f"node {label!r} has no children", offset=start)
            node = ConstituencyNode(label, tuple(children))
            if stack:
                if label == "":
                    raise ParseError("empty label", offset=start)
                stack[-1][1].append(node)
            else:
                trees.append(_unwrap(node, start))
        else:
            if not stack:
                raise ParseError(f"text {tok!r} outside brackets", offset=off)
            frame = stack[-1]
            if frame[0] is None:
                frame[0] = tok
            else:
                word = _DECODE.get(tok, tok)
                frame[1].append(ConstituencyNode.leaf(word))
    if stack:
        raise ParseError("unmatched '('", offset=stack[0][2])
    return trees


def _unwrap(node, offset):
    if node.label in _WRAPPERS:
        if len(node.children) == 1 and not node.children[0].is_leaf:
            return node.children[0]
        if node.label == "":
            raise ParseError("empty label", offset=offset)
    return node


def to_bracketed(tree: ConstituencyNode) -> str:
    """Serialize back to a single-line bracketed string."""
    if tree.is_leaf:
        return _ENCODE.get(tree.leaf_text, tree.leaf_text)
    inner = " ".join(to_bracketed(c) for c in tree.children)
    return f"({tree.label} {inner})"
