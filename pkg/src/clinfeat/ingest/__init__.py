"""Readers that turn annotated input files into the core data model."""
from __future__ import annotations

import enum

from .chat import parse_chat
from .conllu import parse_conllu
from .timed import dump_timed_json, parse_timed_json
from .trees import parse_bracketed_tree, to_bracketed


class InputFormat(str, enum.Enum):
    CONLLU = "conllu"
    BRACKETED_TREES = "trees"
    TIMED_JSON = "timed_json"
    CHAT = "chat"

    @property
    def extension(self) -> str:
        return _EXTENSIONS[self]

    @classmethod
    def parse(cls, value: str) -> "InputFormat":
        aliases = {"bracketed_trees": cls.BRACKETED_TREES, "json": cls.TIMED_JSON}
        if value in aliases:
            return aliases[value]
        return cls(value)


_EXTENSIONS = {
    InputFormat.CONLLU: ".conllu",
    InputFormat.BRACKETED_TREES: ".trees",
    InputFormat.TIMED_JSON: ".json",
    InputFormat.CHAT: ".cha",
}

__all__ = [
    "InputFormat",
    "dump_timed_json",
    "parse_bracketed_tree",
    "parse_chat",
    "parse_conllu",
    "parse_timed_json",
    "to_bracketed",
]
