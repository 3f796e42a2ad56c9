"""Command-line entry point.

    clinfeat compute --config cfg.yaml --input DIR --format conllu --output out.csv
    clinfeat demo --features out.csv --labels labels.csv --k 5 --report report.json

``compute`` exits 0 on full success, 2 when some documents or features
failed (their rows are all-NA), and 1 on fatal errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .errors import ClinfeatError

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2

logger = logging.getLogger("clinfeat")


def _build_parser():
    parser = argparse.ArgumentParser(prog="clinfeat", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="extract features from annotated files")
    comp.add_argument("--config", required=True, help="YAML config file")
    comp.add_argument("--input", required=True, help="input file or directory")
    comp.add_argument(
        "--format", required=True, choices=["conllu", "trees", "timed_json", "chat"]
    )
    comp.add_argument("--output", required=True, help="CSV path, or - for stdout")
    comp.add_argument("--threads", type=int, default=None)
    comp.add_argument("--speaker", default=None, help="speaker code, e.g. PAR")

    demo = sub.add_parser("demo", help="RFE + linear SVM on a feature table")
    demo.add_argument("--features", required=True, help="feature CSV from `compute`")
    demo.add_argument("--labels", required=True, help="CSV with columns doc_id,label")
    demo.add_argument("--k", type=int, default=5)
    demo.add_argument("--test-fraction", type=float, default=0.2)
    demo.add_argument("--seed", type=int, default=0)
    demo.add_argument("--lambda", dest="lam", type=float, default=1e-3)
    demo.add_argument("--epochs", type=int, default=1000)
    demo.add_argument(
        "--all-features", action="store_true",
        help="use every column instead of the restricted feature list",
    )
    demo.add_argument("--report", required=True, help="JSON report path")
    return parser


def _compute(args) -> int:
    from .pipeline import load_config, process_batch, write_csv

    cfg = load_config(args.config, format=args.format, speaker=args.speaker, threads=args.threads)
    table = process_batch(args.input, cfg)
    write_csv(table, args.output)
    for diag in table.diagnostics:
        print(diag, file=sys.stderr)
    return EXIT_PARTIAL if table.failed else EXIT_OK


def read_labels(path) -> dict:
    from .aphasia import parse_label

    labels = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"doc_id", "label"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected columns doc_id,label")
        for row in reader:
            labels[row["doc_id"]] = parse_label(row["label"])
    return labels


def _demo(args) -> int:
    from .aphasia import run_demo
    from .pipeline import read_csv

    table = read_csv(args.features)
    labels = read_labels(args.labels)
    features = list(table.feature_names) if args.all_features else None
    report = run_demo(
        table, labels, k=args.k, test_fraction=args.test_fraction, seed=args.seed,
        features=features, lam=args.lam, epochs=args.epochs,
    )
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    print(f"accuracy={report['accuracy']:.3f} f1={report['f1']:.3f} "
          f"features={','.join(report['selected_features'])}", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "compute":
            return _compute(args)
        return _demo(args)
    except (ClinfeatError, ValueError, KeyError, OSError) as exc:
        print(f"clinfeat: error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
