"""Batch feature extraction: configuration, per-document dispatch, CSV output."""
from __future__ import annotations

import csv
import difflib
import io
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, NamedTuple, Optional

import yaml

from . import discourse, lexicosemantics as lex, phonology as phon, syntax as syn
from .catalog import BY_NAME, FEATURE_NAMES, FeatureVector, catalog_order, restricted_feature_list
from .errors import (
    ClinfeatError,
    ConfigNotFoundError,
    FeatureUnavailable,
    MalformedConfigError,
    UnknownFeatureError,
)
from .ingest import InputFormat, parse_bracketed_tree, parse_chat, parse_conllu, parse_timed_json
from .model import NA, Document, Value, merge_layers

logger = logging.getLogger(__name__)

THREADS_ENV = "CLINFEAT_THREADS"
SIDECAR_EXTENSIONS = (".conllu", ".trees", ".json", ".cha")


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise MalformedConfigError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if n < 1:
            raise MalformedConfigError(f"{THREADS_ENV} must be >= 1")
        return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class PipelineConfig:
    features: tuple = FEATURE_NAMES
    format: InputFormat = InputFormat.CONLLU
    speaker: Optional[str] = None
    phonology: phon.PauseConfig = phon.PauseConfig()
    syntax: syn.ConstituentLabelConfig = syn.ConstituentLabelConfig()
    threads: int = field(default_factory=default_threads)

    def __post_init__(self):
        names = list(self.features)
        if not names:
            raise MalformedConfigError("no features selected")
        for name in names:
            if name not in BY_NAME:
                close = difflib.get_close_matches(name, FEATURE_NAMES, n=1)
                raise UnknownFeatureError(name, close[0] if close else None)
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise MalformedConfigError(f"duplicate feature(s): {dupes}")
        if self.threads < 1:
            raise MalformedConfigError("threads must be >= 1")
        object.__setattr__(self, "features", tuple(catalog_order(names)))
        object.__setattr__(self, "format", InputFormat.parse(self.format))


_CONFIG_KEYS = {"features", "phonology", "syntax"}


def load_config(path, **overrides) -> PipelineConfig:
    """Read a YAML config with top-level keys ``features``, ``phonology``, ``syntax``.

    ``features`` is a list of catalog names, or one of the strings ``all`` or
    ``restricted``. Keyword overrides (``format``, ``speaker``, ``threads``)
    are passed straight to :class:`PipelineConfig`.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigNotFoundError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise MalformedConfigError(f"invalid YAML in {path}: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise MalformedConfigError("config must be a mapping")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise MalformedConfigError(f"unknown config key(s): {sorted(unknown)}")

    features = data.get("features")
    if features == "all":
        features = list(FEATURE_NAMES)
    elif features == "restricted":
        features = restricted_feature_list()
    elif features is None:
        features = []
    elif not isinstance(features, list) or not all(isinstance(f, str) for f in features):
        raise MalformedConfigError("features must be a list of feature names")
    try:
        pause_cfg = phon.PauseConfig.from_mapping(data.get("phonology"))
        label_cfg = syn.ConstituentLabelConfig.from_mapping(data.get("syntax"))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedConfigError(str(exc)) from None
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return PipelineConfig(
        features=tuple(features), phonology=pause_cfg, syntax=label_cfg, **overrides
    )


class Diagnostic(NamedTuple):
    doc_id: str
    feature: Optional[str]
    cause: str
    level: str = "warning"

    def __str__(self):
        where = self.doc_id if self.feature is None else f"{self.doc_id}:{self.feature}"
        return f"{self.level}: {where}: {self.cause}"


# -- per-document feature dispatch -----------------------------------------


class _Context:
    """Lazily computed intermediate results shared between features of one document."""

    def __init__(self, doc: Document, cfg: PipelineConfig):
        self.doc = doc
        self.cfg = cfg

    @cached_property
    def transcript(self):
        tr = self.doc.transcript
        if tr is None:
            raise FeatureUnavailable("no timing layer")
        tr = tr.for_speaker(self.cfg.speaker)
        if not tr.utterances:
            raise FeatureUnavailable(f"no utterances for speaker {self.cfg.speaker!r}")
        return tr

    @cached_property
    def pauses(self):
        return phon.detect_pauses(self.transcript, self.cfg.phonology)

    @cached_property
    def locution(self):
        return phon.locution_phonation(self.transcript)

    @cached_property
    def rates(self):
        return phon.speech_rates(self.transcript)

    @cached_property
    def dependency_doc(self) -> Document:
        if not self.doc.has_dependencies:
            raise FeatureUnavailable("no dependency layer")
        return self.doc

    @cached_property
    def vocab(self):
        return lex.vocabulary_stats(self.dependency_doc)

    @cached_property
    def yngve(self):
        return syn.yngve_stats(self.doc)

    def count(self, labels) -> int:
        return syn.count_constituents(self.doc, labels)

    def rate(self, count: int) -> Value:
        return syn.constituent_rate(count, len(self.doc.sentences))

    @cached_property
    def infinitives(self) -> int:
        return syn.count_infinitive_phrases(self.doc, self.cfg.syntax)


def _hesitation(c: _Context) -> Value:
    c.pauses  # raises FeatureUnavailable when word timings are missing
    return phon.hesitation_ratio(c.transcript, c.cfg.phonology)


def _labels(attr):
    return lambda c: float(c.count(getattr(c.cfg.syntax, attr)))


def _label_rate(attr):
    return lambda c: c.rate(c.count(getattr(c.cfg.syntax, attr)))


FEATURES: dict[str, Callable[[_Context], Value]] = {
    "number_of_pauses": lambda c: float(c.pauses.count),
    "total_pause_time": lambda c: c.pauses.total,
    "mean_pause_duration": lambda c: c.pauses.mean,
    "between_utterance_pause_duration": lambda c: phon.between_utterance_pause(c.transcript),
    "hesitation_ratio": _hesitation,
    "speech_rate": lambda c: c.rates[0],
    "maximum_speech_rate": lambda c: c.rates[1],
    "total_phonation_time": lambda c: c.locution[1],
    "standardized_phonation_time": lambda c: c.locution[2],
    "total_locution_time": lambda c: c.locution[0],
    **{
        name: (lambda sel: lambda c: lex.pos_rate(c.dependency_doc, sel))(sel)
        for name, sel in lex.RATE_SELECTORS.items()
    },
    **{
        name: (lambda num, den: lambda c: lex.pos_ratio(c.dependency_doc, num, den))(num, den)
        for name, (num, den) in lex.RATIO_SELECTORS.items()
    },
    "idea_density": lambda c: lex.idea_density(c.dependency_doc),
    "honores_statistic": lambda c: lex.honore(c.vocab),
    "brunets_index": lambda c: lex.brunet(c.vocab),
    "type_token_ratio": lambda c: lex.type_token_ratio(c.vocab),
    "word_length": lambda c: lex.mean_word_length(c.dependency_doc),
    "proportion_of_inflected_verbs": lambda c: syn.morph_proportion(c.dependency_doc, "VerbForm", "Fin"),
    "proportion_of_auxiliary_verbs": lambda c: syn.auxiliary_proportion(c.dependency_doc),
    "proportion_of_gerund_verbs": lambda c: syn.morph_proportion(c.dependency_doc, "VerbForm", "Ger"),
    "proportion_of_participles": lambda c: syn.morph_proportion(c.dependency_doc, "VerbForm", "Part"),
    "number_of_clauses": _labels("clause_labels"),
    "clause_rate": _label_rate("clause_labels"),
    "proportion_of_nouns_with_determiners": lambda c: syn.noun_modifier_proportion(c.dependency_doc, "det"),
    "proportion_of_nouns_with_adjectives": lambda c: syn.noun_modifier_proportion(c.dependency_doc, "amod"),
    "number_of_noun_phrases": _labels("np_labels"),
    "noun_phrase_rate": _label_rate("np_labels"),
    "number_of_verb_phrases": _labels("vp_labels"),
    "verb_phrase_rate": _label_rate("vp_labels"),
    "number_of_infinitive_phrases": lambda c: float(c.infinitives),
    "infinitive_phrase_rate": lambda c: c.rate(c.infinitives),
    "number_of_prepositional_phrases": _labels("pp_labels"),
    "prepositional_phrase_rate": _label_rate("pp_labels"),
    "number_of_dependent_clauses": _labels("dependent_clause_labels"),
    "dependent_clause_rate": _label_rate("dependent_clause_labels"),
    "max_yngve_depth": lambda c: c.yngve.max_depth,
    "mean_yngve_depth": lambda c: c.yngve.mean_depth,
    "total_yngve_depth": lambda c: c.yngve.total_depth,
    "parse_tree_height": lambda c: syn.parse_tree_height(c.doc),
    "number_of_discourse_markers": lambda c: float(discourse.discourse_marker_count(c.dependency_doc)),
    "discourse_marker_rate": lambda c: discourse.discourse_marker_rate(c.dependency_doc),
}

assert set(FEATURES) == set(FEATURE_NAMES)


def compute_features(
    doc: Document, cfg: PipelineConfig, records: Optional[list] = None
) -> FeatureVector:
    """Compute ``cfg.features`` for one document.

    A feature whose input layer is missing (or whose computation fails) is NA,
    and a :class:`Diagnostic` is appended to ``records`` when given.
    """
    ctx = _Context(doc, cfg)
    values = {}
    for name in cfg.features:
        try:
            values[name] = FEATURES[name](ctx)
        except FeatureUnavailable as exc:
            values[name] = NA
            _note(records, Diagnostic(doc.id, name, str(exc)))
        except Exception as exc:  # noqa: BLE001 - one bad feature must not sink the row
            values[name] = NA
            _note(records, Diagnostic(doc.id, name, f"{type(exc).__name__}: {exc}", "error"))
    return FeatureVector(values)


def _note(records, diag):
    logger.debug("%s", diag)
    if records is not None:
        records.append(diag)


# -- batch -----------------------------------------------------------------


@dataclass
class FeatureTable:
    feature_names: tuple
    rows: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        """True when any document or feature hit an error (not just a missing layer)."""
        return any(d.level == "error" for d in self.diagnostics)

    def column(self, name) -> list:
        return [vec[name] for _, vec in self.rows]


class EmptyBatchError(ClinfeatError):
    pass


def discover(input_path, fmt: InputFormat) -> list[Path]:
    """Input files for ``fmt`` under ``input_path`` (recursive), sorted by path."""
    root = Path(input_path)
    if root.is_file():
        return [root]
    if not root.is_dir():
        raise EmptyBatchError(f"input not found: {root}")
    files = sorted(
        (p for p in root.rglob(f"*{fmt.extension}") if p.is_file()),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    if not files:
        raise EmptyBatchError(f"no {fmt.extension} files under {root}")
    return files


def document_id(path: Path, root: Path) -> str:
    base = root if root.is_dir() else root.parent
    return path.relative_to(base).with_suffix("").as_posix()


def load_document(path: Path, doc_id: str, cfg: PipelineConfig) -> Document:
    """Parse ``path`` plus any same-named sidecar files into one document."""
    sentences, trees, transcript = (), (), None
    for ext in SIDECAR_EXTENSIONS:
        part = path.with_suffix(ext)
        if not part.is_file():
            continue
        text = part.read_text(encoding="utf-8")
        if ext == ".conllu":
            sentences = parse_conllu(text)
        elif ext == ".trees":
            trees = parse_bracketed_tree(text)
        elif ext == ".json":
            transcript = parse_timed_json(text)
        else:
            _, chat_transcript = parse_chat(text, cfg.speaker or "PAR")
            if transcript is None:
                transcript = chat_transcript
    return merge_layers(doc_id, sentences, trees, transcript)


def _process_one(path: Path, root: Path, cfg: PipelineConfig):
    doc_id = document_id(path, root)
    records = []
    try:
        doc = load_document(path, doc_id, cfg)
    except (ClinfeatError, ValueError, OSError) as exc:
        records.append(Diagnostic(doc_id, None, f"{type(exc).__name__}: {exc}", "error"))
        return doc_id, FeatureVector.all_na(cfg.features), records
    return doc_id, compute_features(doc, cfg, records), records


def process_batch(input_path, cfg: PipelineConfig) -> FeatureTable:
    root = Path(input_path)
    paths = discover(root, cfg.format)
    table = FeatureTable(tuple(cfg.features))
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        results = list(pool.map(lambda p: _process_one(p, root, cfg), paths))
    for doc_id, vec, records in results:
        table.rows.append((doc_id, vec))
        table.diagnostics.extend(records)
    return table


# -- CSV -------------------------------------------------------------------


def format_value(value: Value) -> str:
    if value is NA:
        return ""
    return repr(float(value))


def write_csv(table: FeatureTable, path) -> None:
    """Write ``doc_id`` plus one column per feature. NA is an empty cell."""
    if not table.rows:
        raise ValueError("feature table is empty")
    if str(path) == "-":
        _write_rows(table, sys.stdout)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_rows(table, fh)


def to_csv_string(table: FeatureTable) -> str:
    buf = io.StringIO(newline="")
    _write_rows(table, buf)
    return buf.getvalue()


def _write_rows(table, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["doc_id", *table.feature_names])
    for doc_id, vec in table.rows:
        writer.writerow([doc_id, *(format_value(vec[n]) for n in table.feature_names)])


def read_csv(path) -> FeatureTable:
    """Inverse of :func:`write_csv`. Columns that are not catalog features are rejected."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV") from None
        if not header or header[0] != "doc_id":
            raise ValueError(f"{path}: first column must be doc_id")
        names = tuple(header[1:])
        table = FeatureTable(names)
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            values = {n: (NA if cell == "" else float(cell)) for n, cell in zip(names, row[1:])}
            table.rows.append((row[0], FeatureVector(values)))
    return table
