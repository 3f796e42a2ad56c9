"""Clean CHAT (TalkBank) transcripts down to plain speaker text.

Only a documented subset of CHAT is handled:

* ``@`` header lines and ``%`` dependent tiers are dropped; tab-indented
  continuation lines are joined onto their tier.
* NAK-delimited time bullets (``\\x15start_end\\x15``, milliseconds) are
  captured as utterance times and removed.
* ``[...]`` code groups are removed. For retracing codes ``[/]``, ``[//]``
  and ``[///]`` the immediately preceding ``<...>`` scope is removed too;
  for any other code the scope text is kept without its angle brackets.
* Tokens starting with ``&`` (fillers, fragments, events such as
  ``&=laughs``), unintelligible markers ``xxx``/``yyy``/``www`` and pause
  markers ``(.)``, ``(..)``, ``(...)``, ``(1.5)`` are removed.
* ``+``-prefixed terminators (``+...``, ``+//.``, ``+/?``) become ``.``;
  other ``+`` linkers (``+<``, ``+^``) are removed.
"""
from __future__ import annotations

import logging
import re
from typing import Optional

from ..errors import EmptyOutputError
from ..model import TimedTranscript, Utterance

logger = logging.getLogger(__name__)

BULLET = "\x15"
_BULLET_RE = re.compile("\x15([^\x15]*)\x15")
_BULLET_TIMES = re.compile(r"^(\d+)_(\d+)$")
_CODE_RE = re.compile(r"(<[^<>]*>\s*)?\[([^\[\]]*)\]")
_RETRACE_CODES = {"/", "//", "///"}
_UNINTELLIGIBLE = {"xxx", "yyy", "www"}
_PAUSE_RE = re.compile(r"^\((\.{1,3}|\d+(\.\d*)?|\d*:\d+(\.\d*)?)\)$")


def _join_continuations(text):
    lines = []
    for raw in text.splitlines():
        if raw.startswith("\t") and lines:
            lines[-1] += " " + raw.strip()
        else:
            lines.append(raw.rstrip())
    return lines


def _strip_codes(content):
    def repl(m):
        scope, code = m.group(1), m.group(2).strip()
        if scope is None or code in _RETRACE_CODES:
            return " "
        return " " + scope.strip()[1:-1] + " "

    while True:
        new = _CODE_RE.sub(repl, content)
        if new == content:
            break
        content = new
    return content.replace("<", " ").replace(">", " ").replace("[", " ").replace("]", " ")


def _clean_tokens(content):
    out = []
    for tok in content.split():
        if tok.startswith("&") or tok.lower() in _UNINTELLIGIBLE or _PAUSE_RE.match(tok):
            continue
        if tok.startswith("+"):
            if tok[-1] in ".?!":
                out.append(".")
            continue
        out.append(tok)
    return " ".join(out)


def _extract_bullets(content, lineno):
    times = []

    def repl(m):
        body = m.group(1)
        tm = _BULLET_TIMES.match(body.strip())
        if tm:
            times.append((int(tm.group(1)), int(tm.group(2))))
        else:
            logger.warning("line %d: ignoring malformed time bullet %r", lineno, body)
        return " "

    content = _BULLET_RE.sub(repl, content).replace(BULLET, " ")
    return content, times


def clean_main_tier(content: str) -> str:
    """Clean the text of one main tier that has already had bullets removed."""
    return _clean_tokens(_strip_codes(content))


def parse_chat(text: str, speaker: str = "PAR") -> tuple[str, Optional[TimedTranscript]]:
    """Return the cleaned text of ``speaker``'s main tiers and, if any time
    bullets were present, a transcript with one utterance per tier."""
    prefix = f"*{speaker}:"
    pieces = []
    utterances = []
    found = False
    for lineno, line in enumerate(_join_continuations(text), start=1):
        if not line.startswith(prefix):
            continue
        found = True
        content, times = _extract_bullets(line[len(prefix):], lineno)
        cleaned = clean_main_tier(content)
        if cleaned:
            pieces.append(cleaned)
        if times:
            start = min(t[0] for t in times)
            end = max(t[1] for t in times)
            if end < start:
                logger.warning("line %d: bullet ends before it starts; ignored", lineno)
                continue
            utterances.append(Utterance(speaker, start / 1000, end / 1000, (), cleaned))
    if not found:
        raise EmptyOutputError(f"no main tier for speaker {speaker!r}")
    transcript = TimedTranscript(tuple(utterances)) if utterances else None
    return " ".join(pieces), transcript
