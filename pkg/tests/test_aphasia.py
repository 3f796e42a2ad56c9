import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clinfeat import cli
from clinfeat.aphasia import (
    LabeledDataset,
    balanced_split,
    balanced_split_indices,
    classification_scores,
    evaluate,
    parse_label,
    rfe,
    run_demo,
    standardize_fit_apply,
    svm_objective,
    synthetic_dataset,
    train_linear_svm,
)
from clinfeat.catalog import FeatureVector, restricted_feature_list
from clinfeat.model import NA
from clinfeat.pipeline import FeatureTable, write_csv


def one_d(n=20, flip=False):
    x = np.repeat([-1.0, 1.0], n)[:, None]
    y = np.repeat([-1, 1], n) * (-1 if flip else 1)
    return LabeledDataset(x, y, ("x",))


class TestStandardize:
    def test_two_points(self):
        Z, mu, sigma = standardize_fit_apply([[1.0], [3.0]])
        assert (mu[0], sigma[0]) == (2.0, 1.0)
        assert Z[:, 0].tolist() == [-1.0, 1.0]

    def test_constant(self):
        Z, _, sigma = standardize_fit_apply([[5.0], [5.0], [5.0]])
        assert Z[:, 0].tolist() == [0.0, 0.0, 0.0]
        assert sigma[0] == 1.0

    def test_impute(self):
        Z, mu, _ = standardize_fit_apply([[1.0], [np.nan], [3.0]])
        assert mu[0] == 2.0
        assert Z[1, 0] == 0.0
        np.testing.assert_allclose(Z[:, 0], [-np.sqrt(1.5), 0.0, np.sqrt(1.5)])

    def test_all_missing_column(self):
        Z, mu, _ = standardize_fit_apply([[np.nan, 1.0], [np.nan, 2.0]])
        assert mu[0] == 0.0 and Z[:, 0].tolist() == [0.0, 0.0]

    def test_too_few(self):
        with pytest.raises(ValueError):
            standardize_fit_apply([[1.0]])


class TestSvm:
    def test_separable(self):
        data = one_d()
        model = train_linear_svm(data, epochs=50)
        assert model.w[0] > 0
        assert evaluate(model, data) == (1.0, 1.0)

    def test_flipped(self):
        assert train_linear_svm(one_d(flip=True), epochs=50).w[0] < 0

    def test_single_class(self):
        with pytest.raises(ValueError):
            train_linear_svm(LabeledDataset([[0.0], [1.0]], [1, 1], ("x",)))

    def test_reproducible(self):
        data, _ = synthetic_dataset(3, n_per_class=30, n_features=8)
        a = train_linear_svm(data, epochs=30, seed=4)
        b = train_linear_svm(data, epochs=30, seed=4)
        assert np.array_equal(a.w, b.w) and a.b == b.b
        c = train_linear_svm(data, epochs=30, seed=5)
        assert not np.array_equal(a.w, c.w)

    def test_objective_settles(self):
        data, _ = synthetic_dataset(0)
        model = train_linear_svm(data, record_objective=True)
        trace = np.array(model.objective_trace)
        assert len(trace) == 1000
        rel = np.diff(trace[-11:]) / trace[-11:-1]
        assert rel.mean() <= 1e-6
        Z, _, _ = standardize_fit_apply(data.X)
        assert trace[-1] == pytest.approx(svm_objective(Z, data.y.astype(float), model.w, model.b, 1e-3))

    def test_beats_perceptron_baseline(self):
        full, _ = synthetic_dataset(1, n_per_class=200)
        train_idx, test_idx = balanced_split_indices(full.y, 0.5, 0)
        data = LabeledDataset(full.X[train_idx], full.y[train_idx], full.feature_names)
        test = LabeledDataset(full.X[test_idx], full.y[test_idx], full.feature_names)
        Z, mu, sigma = standardize_fit_apply(data.X)
        w, b = np.zeros(Z.shape[1]), 0.0
        for _ in range(50):
            for i in range(len(Z)):
                if data.y[i] * (Z[i] @ w + b) <= 0:
                    w += data.y[i] * Z[i]
                    b += data.y[i]
        Zt = (test.X - mu) / sigma
        baseline = np.mean(np.where(Zt @ w + b >= 0, 1, -1) == test.y)
        accuracy, _ = evaluate(train_linear_svm(data), test)
        assert accuracy >= 0.9
        assert accuracy >= baseline - 0.02


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=6, max_size=6), st.integers(0, 50))
def test_scaling_invariance(exponents, seed):
    data, _ = synthetic_dataset(seed, n_per_class=20, n_features=6, n_informative=2)
    X = data.X.copy()
    X[::7, 1] = np.nan
    scales = 2.0 ** np.array(exponents)
    raw = LabeledDataset(X, data.y, data.feature_names)
    scaled = LabeledDataset(X * scales, data.y, data.feature_names)
    a = train_linear_svm(raw, epochs=20, seed=seed)
    b = train_linear_svm(scaled, epochs=20, seed=seed)
    assert np.array_equal(a.predict(raw.X), b.predict(scaled.X))


def test_scaling_invariance_arbitrary_factors():
    data, _ = synthetic_dataset(9, n_per_class=40, n_features=6, n_informative=3)
    scales = np.array([0.001, 3.7, 1e4, 0.5, 17.0, 2.2])
    a = train_linear_svm(data, epochs=100)
    b = train_linear_svm(LabeledDataset(data.X * scales, data.y, data.feature_names), epochs=100)
    assert np.array_equal(a.predict(data.X), b.predict(data.X * scales))


class TestRfe:
    def test_noise_column_dropped_first(self):
        rng = np.random.default_rng(0)
        y = np.repeat([1, -1], 60)
        X = rng.standard_normal((120, 6))
        noise = 3
        for j in range(6):
            if j != noise:
                X[:, j] += y
        data = LabeledDataset(X, y, tuple(f"c{j}" for j in range(6)))
        first = train_linear_svm(data)
        assert int(np.argmin(np.abs(first.w))) == noise
        selected, _ = rfe(data, target_k=5)
        assert "c3" not in selected

    def test_identity(self):
        data, _ = synthetic_dataset(0, n_per_class=20, n_features=5)
        selected, model = rfe(data, target_k=5, epochs=10)
        assert selected == list(data.feature_names)
        assert len(model.w) == 5

    def test_invalid_k(self):
        data, _ = synthetic_dataset(0, n_per_class=10, n_features=3, n_informative=1)
        with pytest.raises(ValueError):
            rfe(data, target_k=4)

    def test_output_properties(self):
        data, _ = synthetic_dataset(2, n_per_class=30, n_features=10, n_informative=3)
        a, _ = rfe(data, target_k=3, epochs=50, seed=1)
        b, _ = rfe(data, target_k=3, epochs=50, seed=1)
        assert a == b
        assert len(a) == 3 and set(a) <= set(data.feature_names)
        assert a == [n for n in data.feature_names if n in a]


class TestEvaluate:
    def test_perfect(self):
        assert classification_scores([1, 1, -1, -1], [1, 1, -1, -1]) == (1.0, 1.0)

    def test_all_negative(self):
        assert classification_scores([1, 1, -1, -1], [-1] * 4) == (0.5, 0.0)

    def test_constant_positive(self):
        acc, f1 = classification_scores([1, 1, -1, -1], [1] * 4)
        assert acc == 0.5 and f1 == pytest.approx(2 / 3)

    def test_empty(self):
        with pytest.raises(ValueError):
            classification_scores([], [])

    @given(st.lists(st.tuples(st.sampled_from([1, -1]), st.sampled_from([1, -1])), min_size=1))
    def test_bounds(self, pairs):
        acc, f1 = classification_scores(*zip(*pairs))
        assert 0 <= acc <= 1 and 0 <= f1 <= 1


def labeled_table(n_pos, n_neg, seed=0):
    rng = np.random.default_rng(seed)
    names = restricted_feature_list()
    rows, labels = [], {}
    for i in range(n_pos + n_neg):
        label = 1 if i < n_pos else -1
        vals = rng.standard_normal(len(names))
        vals[:3] += label
        doc_id = f"d{i:03d}"
        rows.append((doc_id, FeatureVector(dict(zip(names, vals)))))
        labels[doc_id] = label
    return FeatureTable(tuple(names), rows), labels


class TestSplit:
    def test_balanced_counts(self):
        table, labels = labeled_table(40, 60)
        train, test = balanced_split(table, labels, 0.25, seed=0)
        assert train.class_counts() == {"aphasia": 30, "control": 30}
        assert test.class_counts() == {"aphasia": 10, "control": 10}

    def test_deterministic(self):
        y = np.repeat([1, -1], [15, 25])
        a = balanced_split_indices(y, 0.2, 3)
        b = balanced_split_indices(y, 0.2, 3)
        assert all(np.array_equal(p, q) for p, q in zip(a, b))
        assert not set(a[0]) & set(a[1])

    def test_too_few(self):
        with pytest.raises(ValueError):
            balanced_split_indices([1, -1, -1, -1], 0.25, 0)

    def test_na_becomes_nan(self):
        table, labels = labeled_table(4, 4)
        doc_id, vec = table.rows[0]
        table.rows[0] = (doc_id, FeatureVector({**vec, "noun_rate": NA}))
        train, test = balanced_split(table, labels, 0.25, 0)
        both = np.vstack([train.X, test.X])
        assert np.isnan(both).sum() == 1


@pytest.mark.parametrize("raw, label", [("aphasia", 1), ("control", -1), ("1", 1), ("-1", -1), ("0", -1)])
def test_parse_label(raw, label):
    assert parse_label(raw) == label


def test_demo_cli(tmp_path):
    table, labels = labeled_table(30, 30, seed=4)
    features = tmp_path / "features.csv"
    write_csv(table, features)
    label_csv = tmp_path / "labels.csv"
    label_csv.write_text("doc_id,label\n" + "".join(
        f"{d},{'aphasia' if v == 1 else 'control'}\n" for d, v in labels.items()))
    report_path = tmp_path / "report.json"
    code = cli.main(["demo", "--features", str(features), "--labels", str(label_csv), "--k", "3",
                     "--epochs", "100", "--report", str(report_path)])
    assert code == 0
    report = json.loads(report_path.read_text())
    assert len(report["selected_features"]) == 3
    assert set(report["weights"]) == set(report["selected_features"])
    assert report["test_sizes"] == {"aphasia": 6, "control": 6}
    assert 0 <= report["accuracy"] <= 1


def test_run_demo_defaults_to_restricted():
    table, labels = labeled_table(20, 20)
    report = run_demo(table, labels, k=2, epochs=50)
    assert set(report["selected_features"]) <= set(restricted_feature_list())
