"""Binary classification of feature tables: standardization, a linear SVM
trained by hinge-loss subgradient descent, recursive feature elimination,
and accuracy/F1 evaluation.

Labels are +1 for the patient (aphasia) class and -1 for controls.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from numba import njit

from .catalog import restricted_feature_list
from .model import NA

POSITIVE, NEGATIVE = 1, -1


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with +/-1 labels. ``X`` may hold NaN for missing values
    until it is standardized."""

    X: np.ndarray
    y: np.ndarray
    feature_names: tuple

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=np.int64)
        if X.ndim != 2:
            raise ValueError("X must be two-dimensional")
        if y.shape != (X.shape[0],):
            raise ValueError(f"{X.shape[0]} rows but {y.shape[0]} labels")
        if not np.isin(y, (POSITIVE, NEGATIVE)).all():
            raise ValueError("labels must be +1 or -1")
        names = tuple(self.feature_names)
        if len(names) != X.shape[1]:
            raise ValueError(f"{X.shape[1]} columns but {len(names)} feature names")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "feature_names", names)

    def __len__(self):
        return self.X.shape[0]

    def select(self, columns: Sequence[int]) -> "LabeledDataset":
        columns = list(columns)
        return LabeledDataset(
            self.X[:, columns], self.y, tuple(self.feature_names[i] for i in columns)
        )

    def class_counts(self) -> dict:
        return {
            "aphasia": int((self.y == POSITIVE).sum()),
            "control": int((self.y == NEGATIVE).sum()),
        }


# -- standardization -------------------------------------------------------


def _fit_scaling(X):
    X = np.asarray(X, dtype=float)
    if X.shape[0] < 2:
        raise ValueError("standardization needs at least 2 samples")
    with np.errstate(invalid="ignore"):
        observed = ~np.isnan(X)
        counts = observed.sum(axis=0)
        mu = np.where(counts > 0, np.nansum(X, axis=0) / np.maximum(counts, 1), 0.0)
    filled = np.where(observed, X, mu)
    sigma = filled.std(axis=0)
    # constant columns pass through unscaled
    degenerate = sigma <= 1e-12 * np.maximum(1.0, np.abs(mu))
    sigma = np.where(degenerate, 1.0, sigma)
    return mu, sigma


def apply_scaling(X, mu, sigma) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    filled = np.where(np.isnan(X), mu, X)
    return (filled - mu) / sigma


def standardize_fit_apply(X):
    """Impute NaN with the column mean, then z-score with population std.

    Returns ``(Z, mu, sigma)``.
    """
    mu, sigma = _fit_scaling(X)
    return apply_scaling(X, mu, sigma), mu, sigma


# -- linear SVM ------------------------------------------------------------


@dataclass(frozen=True)
class LinearModel:
    w: np.ndarray
    b: float
    mu: np.ndarray
    sigma: np.ndarray
    feature_names: tuple = ()
    objective_trace: tuple = field(default=(), repr=False)

    def decision_function(self, X) -> np.ndarray:
        return apply_scaling(X, self.mu, self.sigma) @ self.w + self.b

    def predict(self, X) -> np.ndarray:
        return np.where(self.decision_function(X) >= 0, POSITIVE, NEGATIVE)

    def weights(self) -> dict:
        return {n: float(v) for n, v in zip(self.feature_names, self.w)}


@njit(cache=False)
def _sgd_epoch(Z, y, order, w, b, lam, t):
    d = Z.shape[1]
    for k in range(order.shape[0]):
        i = order[k]
        t += 1
        eta = 1.0 / (lam * t)
        score = b
        for j in range(d):
            score += w[j] * Z[i, j]
        # subgradient of lam * ||w||^2 is 2 * lam * w
        shrink = 1.0 - 2.0 * eta * lam
        for j in range(d):
            w[j] *= shrink
        if y[i] * score < 1.0:
            for j in range(d):
                w[j] += eta * y[i] * Z[i, j]
            b += eta * y[i]
    return b, t


def svm_objective(Z, y, w, b, lam) -> float:
    """Mean hinge loss plus ``lam * ||w||^2`` on standardized data."""
    margins = y * (Z @ w + b)
    return float(np.maximum(0.0, 1.0 - margins).mean() + lam * (w @ w))


def train_linear_svm(
    dataset: LabeledDataset,
    lam: float = 1e-3,
    epochs: int = 1000,
    seed: int = 0,
    record_objective: bool = False,
) -> LinearModel:
    """Minimize mean hinge loss + ``lam * ||w||^2`` by per-sample subgradient
    steps of size ``1 / (lam * t)`` over a seeded shuffle each epoch."""
    y = dataset.y
    if not ((y == POSITIVE).any() and (y == NEGATIVE).any()):
        raise ValueError("training data must contain both classes")
    if lam <= 0 or epochs < 1:
        raise ValueError("lam must be positive and epochs >= 1")
    Z, mu, sigma = standardize_fit_apply(dataset.X)
    Z = np.ascontiguousarray(Z)
    yf = y.astype(float)
    rng = np.random.default_rng(seed)
    w = np.zeros(Z.shape[1])
    b, t = 0.0, 0
    trace = []
    for _ in range(epochs):
        order = rng.permutation(len(y))
        b, t = _sgd_epoch(Z, yf, order, w, b, lam, t)
        if record_objective:
            trace.append(svm_objective(Z, yf, w, b, lam))
    return LinearModel(w.copy(), float(b), mu, sigma, dataset.feature_names, tuple(trace))


# -- feature selection -----------------------------------------------------


def rfe(
    dataset: LabeledDataset,
    target_k: int = 5,
    lam: float = 1e-3,
    epochs: int = 1000,
    seed: int = 0,
) -> tuple[list, LinearModel]:
    """Recursive feature elimination down to ``target_k`` features.

    Each round retrains on the surviving columns and drops the one with the
    smallest absolute weight (lowest column index on ties). Returns the
    survivors in input order and a model retrained on them.
    """
    n_features = dataset.X.shape[1]
    if target_k < 1 or n_features < target_k:
        raise ValueError(f"cannot select {target_k} of {n_features} features")
    remaining = list(range(n_features))
    while len(remaining) > target_k:
        model = train_linear_svm(dataset.select(remaining), lam, epochs, seed)
        # argmin returns the first minimum, i.e. the lowest surviving column
        drop = int(np.argmin(np.abs(model.w)))
        del remaining[drop]
    final = train_linear_svm(dataset.select(remaining), lam, epochs, seed)
    return [dataset.feature_names[i] for i in remaining], final


# -- evaluation ------------------------------------------------------------


def classification_scores(y_true, y_pred) -> tuple[float, float]:
    """(accuracy, F1 of the positive class)."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.size == 0:
        raise ValueError("empty test set")
    accuracy = float((y_true == y_pred).mean())
    tp = int(((y_pred == POSITIVE) & (y_true == POSITIVE)).sum())
    fp = int(((y_pred == POSITIVE) & (y_true == NEGATIVE)).sum())
    fn = int(((y_pred == NEGATIVE) & (y_true == POSITIVE)).sum())
    denom = 2 * tp + fp + fn
    f1 = 2 * tp / denom if denom else 0.0
    return accuracy, f1


def evaluate(model: LinearModel, test: LabeledDataset) -> tuple[float, float]:
    if len(test) == 0:
        raise ValueError("empty test set")
    return classification_scores(test.y, model.predict(test.X))


# -- data preparation ------------------------------------------------------


def balanced_split_indices(y, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Stratified split with equal class counts in train and in test.

    Both classes are cut to the size of the smaller one at random, then
    ``round(m * test_fraction)`` per class go to test.
    """
    y = np.asarray(y)
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must be in (0, 1)")
    pos = np.flatnonzero(y == POSITIVE)
    neg = np.flatnonzero(y == NEGATIVE)
    m = min(len(pos), len(neg))
    if m < 2:
        raise ValueError("each class needs at least 2 samples")
    n_test = min(max(1, int(round(m * test_fraction))), m - 1)
    rng = np.random.default_rng(seed)
    train, test = [], []
    for idx in (pos, neg):
        chosen = rng.permutation(idx)[:m]
        test.extend(chosen[:n_test])
        train.extend(chosen[n_test:])
    return np.sort(np.array(train)), np.sort(np.array(test))


def dataset_from_table(table, labels: Mapping[str, int], features: Optional[Sequence[str]] = None):
    """Rows of ``table`` that have a label, as a dataset (NA -> NaN)."""
    names = tuple(features) if features is not None else tuple(table.feature_names)
    missing = [n for n in names if n not in table.feature_names]
    if missing:
        raise KeyError(f"features not in table: {missing}")
    rows, ys, ids = [], [], []
    for doc_id, vec in table.rows:
        if doc_id not in labels:
            continue
        rows.append([math.nan if vec[n] is NA else vec[n] for n in names])
        ys.append(labels[doc_id])
        ids.append(doc_id)
    X = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return LabeledDataset(X, np.array(ys, dtype=np.int64), names), ids


def balanced_split(table, labels, test_fraction: float, seed: int, features=None):
    """Split a labeled feature table into balanced (train, test) datasets."""
    data, _ = dataset_from_table(table, labels, features)
    train_idx, test_idx = balanced_split_indices(data.y, test_fraction, seed)
    return (
        LabeledDataset(data.X[train_idx], data.y[train_idx], data.feature_names),
        LabeledDataset(data.X[test_idx], data.y[test_idx], data.feature_names),
    )


def parse_label(value: str) -> int:
    v = str(value).strip().lower()
    if v in {"1", "+1", "aphasia", "patient", "pos", "positive"}:
        return POSITIVE
    if v in {"-1", "0", "control", "neg", "negative"}:
        return NEGATIVE
    raise ValueError(f"unrecognized label {value!r}")


def synthetic_dataset(
    seed: int,
    n_per_class: int = 100,
    n_features: int = 36,
    n_informative: int = 5,
    shift: float = 1.0,
) -> tuple[LabeledDataset, list]:
    """Gaussian classes with unit variance; informative columns have mean
    ``+shift`` for the positive class and ``-shift`` for the negative one.

    Returns the dataset and the names of the informative columns.
    """
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((2 * n_per_class, n_features))
    y = np.repeat([POSITIVE, NEGATIVE], n_per_class)
    informative = np.sort(rng.choice(n_features, n_informative, replace=False))
    X[:, informative] += shift * y[:, None]
    names = tuple(f"f{i:02d}" for i in range(n_features))
    return LabeledDataset(X, y, names), [names[i] for i in informative]


def run_demo(
    table,
    labels: Mapping[str, int],
    k: int = 5,
    test_fraction: float = 0.2,
    seed: int = 0,
    features: Optional[Sequence[str]] = None,
    lam: float = 1e-3,
    epochs: int = 1000,
) -> dict:
    """Balanced split, RFE to ``k`` features on train, evaluate on test.

    ``features`` defaults to the restricted feature list (those columns of
    it that the table has).
    """
    if features is None:
        features = [n for n in restricted_feature_list() if n in table.feature_names]
        if not features:
            raise ValueError("table has none of the restricted features")
    train, test = balanced_split(table, labels, test_fraction, seed, features)
    selected, model = rfe(train, k, lam, epochs, seed)
    accuracy, f1 = evaluate(model, test.select([features.index(n) for n in selected]))
    return {
        "selected_features": selected,
        "weights": model.weights(),
        "bias": model.b,
        "accuracy": accuracy,
        "f1": f1,
        "train_sizes": train.class_counts(),
        "test_sizes": test.class_counts(),
        "seed": seed,
        "lambda": lam,
        "epochs": epochs,
    }
