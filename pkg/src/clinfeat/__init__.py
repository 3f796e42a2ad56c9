"""Clinically motivated linguistic features from annotated language data."""

from .catalog import FeatureVector, feature_catalog, restricted_feature_list
from .ingest import parse_bracketed_tree, parse_chat, parse_conllu, parse_timed_json
from .model import NA, Document, Sentence, TimedTranscript, Token, is_na, merge_layers
from .pipeline import PipelineConfig, compute_features, load_config, process_batch, write_csv

__version__ = "0.1.0"

__all__ = [
    "NA",
    "Document",
    "FeatureVector",
    "PipelineConfig",
    "Sentence",
    "TimedTranscript",
    "Token",
    "compute_features",
    "feature_catalog",
    "is_na",
    "load_config",
    "merge_layers",
    "parse_bracketed_tree",
    "parse_chat",
    "parse_conllu",
    "parse_timed_json",
    "process_batch",
    "restricted_feature_list",
    "write_csv",
]
