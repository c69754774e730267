import numpy as np
import pandas as pd
import pytest

from geometry import (
    PointPattern,
    TorusWindow,
    pairwise_torus_distances,
    sample_poisson,
    translate,
)
from marks import nearest_neighbor_marks
from regress import (
    DEFAULT_LAMBDA_GRID,
    BaselineModel,
    cross_validate_lambdas,
    cross_validation_errors,
    fit_baseline,
    fit_ridge,
    fold_assignment,
    load_baseline_model,
    load_ridge_model,
    local_distance_features,
    pattern_features,
    predict,
    predict_baseline,
    save_baseline_model,
    save_ridge_model,
    write_cv_report,
)
from regress.ridge import RidgeModel
from utils.errors import GeomarkConfigError, InsufficientDataError, ShapeError


def _linear_data(rng, n=60, d=5, p=3):
    X = rng.normal(size=(n, d))
    B = rng.normal(size=(p, d))
    b = rng.normal(size=p)
    return X, X @ B.T + b, B, b


class TestFitRidge:
    def test_recovers_consistent_system(self, rng):
        X, Y, B, b = _linear_data(rng)
        model = fit_ridge(X, Y, 0.0)
        coefficients, intercepts = model.raw_coefficients()
        np.testing.assert_allclose(coefficients, B, atol=1e-8)
        np.testing.assert_allclose(intercepts, b, atol=1e-8)
        np.testing.assert_allclose(predict(model, X), Y, atol=1e-8)

    def test_infinite_shrinkage_predicts_means(self, rng):
        X, Y, _, _ = _linear_data(rng)
        model = fit_ridge(X, Y, 1e12)
        np.testing.assert_allclose(model.coefficients, 0.0, atol=1e-8)
        np.testing.assert_allclose(predict(model, X), np.tile(Y.mean(axis=0), (60, 1)), rtol=1e-6)

    def test_matches_gradient_descent(self, rng):
        X, Y, _, _ = _linear_data(rng, n=200)
        y = Y[:, 0] + rng.normal(scale=0.5, size=200)
        lam = 10.0
        model = fit_ridge(X, y, lam)
        Z = (X - X.mean(axis=0)) / X.std(axis=0)
        beta, beta0 = np.zeros(5), 0.0
        step = 1.0 / (2 * (np.linalg.eigvalsh(Z.T @ Z).max() + lam + 200))
        for _ in range(5000):
            residual = Z @ beta + beta0 - y
            beta -= step * (2 * Z.T @ residual + 2 * lam * beta)
            beta0 -= step * 2 * residual.sum()
        np.testing.assert_allclose(model.coefficients[0], beta, atol=1e-6)
        assert model.intercepts[0] == pytest.approx(beta0, abs=1e-6)

    def test_output_scaling_equivariance(self, rng):
        X, Y, _, _ = _linear_data(rng)
        Y = Y + rng.normal(size=Y.shape)
        scaled = Y.copy()
        scaled[:, 1] *= 7.0
        base, other = fit_ridge(X, Y, 2.0), fit_ridge(X, scaled, 2.0)
        np.testing.assert_allclose(other.coefficients[1], 7.0 * base.coefficients[1], rtol=1e-12)
        assert other.intercepts[1] == pytest.approx(7.0 * base.intercepts[1], rel=1e-12)

    def test_singular_system_falls_back_to_pseudo_inverse(self, rng, log_records):
        x = rng.normal(size=(30, 1))
        X = np.hstack([x, x])
        model = fit_ridge(X, 3 * x[:, 0] + 1, 0.0)
        np.testing.assert_allclose(predict(model, X), 3 * x[:, 0] + 1, atol=1e-8)
        assert any("pseudo-inverse" in m for m in log_records.messages())

    def test_negative_lambda_rejected(self, rng):
        X, Y, _, _ = _linear_data(rng)
        with pytest.raises(GeomarkConfigError):
            fit_ridge(X, Y, -1.0)

    def test_sample_counts_must_match(self, rng):
        with pytest.raises(ShapeError):
            fit_ridge(rng.normal(size=(10, 2)), rng.normal(size=(9, 1)), 1.0)


class TestPredict:
    def test_zero_coefficients_return_intercepts(self):
        model = RidgeModel(
            np.zeros((2, 3)), np.array([1.5, -2.0]), np.ones(2), np.zeros(3), np.ones(3)
        )
        np.testing.assert_array_equal(predict(model, np.array([4.0, 5.0, 6.0])), [1.5, -2.0])

    def test_identity_model_returns_input(self):
        model = RidgeModel(np.ones((1, 1)), np.zeros(1), np.zeros(1), np.zeros(1), np.ones(1))
        assert predict(model, np.array([2.5]))[0] == 2.5

    def test_dimension_mismatch_rejected(self, rng):
        X, Y, _, _ = _linear_data(rng)
        with pytest.raises(ShapeError):
            predict(fit_ridge(X, Y, 1.0), np.zeros(4))


class TestCrossValidation:
    def test_folds_cover_every_sample_once(self):
        folds = fold_assignment(23, 5, seed=4)
        np.testing.assert_array_equal(np.sort(np.concatenate(folds)), np.arange(23))

    def test_too_few_samples_rejected(self, rng):
        with pytest.raises(GeomarkConfigError):
            cross_validate_lambdas(rng.normal(size=(3, 2)), rng.normal(size=3), folds=5)

    def test_deterministic_given_seed(self, rng):
        X, Y, _, _ = _linear_data(rng)
        Y = Y + rng.normal(size=Y.shape)
        a = cross_validation_errors(X, Y, seed=9)
        b = cross_validation_errors(X, Y, seed=9)
        np.testing.assert_array_equal(a[1], b[1])

    def test_noiseless_system_selects_smallest_lambda(self, rng):
        X, Y, _, _ = _linear_data(rng)
        np.testing.assert_array_equal(cross_validate_lambdas(X, Y), DEFAULT_LAMBDA_GRID[0])

    def test_pure_noise_selects_heavy_shrinkage(self):
        selected = []
        for seed in range(5):
            noise = np.random.default_rng(seed)
            X = noise.normal(size=(60, 40))
            Y = noise.normal(size=(60, 8))
            selected.extend(cross_validate_lambdas(X, Y, seed=seed))
        assert np.mean(np.asarray(selected) >= 1.0) >= 0.8

    def test_report_has_one_row_per_output_and_lambda(self, tmp_path, rng):
        X, Y, _, _ = _linear_data(rng)
        grid, errors = cross_validation_errors(X, Y, grid=[0.1, 1.0])
        path = write_cv_report(tmp_path / "cv.csv", grid, errors, ["a", "b", "c"])
        frame = pd.read_csv(path)
        assert len(frame) == 6
        assert frame.loc[frame["output"] == "b", "lambda"].tolist() == [0.1, 1.0]


class TestLocalDistanceFeatures:
    def test_two_points(self):
        p = sample_poisson(40, TorusWindow(), 1)
        first, second = p.points[0], p.points[1]
        pair = PointPattern(TorusWindow(), np.vstack([first, second]))
        d = np.hypot(*np.minimum(np.abs(first - second), 1 - np.abs(first - second)))
        np.testing.assert_allclose(local_distance_features(pair, 0, 2), [d, d])

    def test_leading_entries_are_sorted_centre_distances(self):
        p = sample_poisson(40, TorusWindow(), 2)
        features = local_distance_features(p, 5, 6)
        assert features.shape == (30,)
        head = features[:5]
        assert np.all(np.diff(head) >= 0)
        row = np.sort(pairwise_torus_distances(p)[5])[1:6]
        np.testing.assert_allclose(head, row)

    def test_symmetric_pairs_equal(self):
        K = 5
        features = local_distance_features(sample_poisson(40, TorusWindow(), 3), 0, K)
        block = np.zeros((K, K))
        block[~np.eye(K, dtype=bool)] = features
        np.testing.assert_array_equal(block, block.T)
        assert np.all(features >= 0)

    def test_translation_invariant(self):
        p = sample_poisson(40, TorusWindow(), 4)
        np.testing.assert_allclose(
            pattern_features(translate(p, [0.6, 0.2]), 8), pattern_features(p, 8), atol=1e-12
        )

    def test_too_few_points_rejected(self):
        p = sample_poisson(5, TorusWindow(), 0)
        with pytest.raises(InsufficientDataError):
            local_distance_features(p, 0, len(p) + 2)


class TestBaseline:
    def test_nearest_neighbour_mark_is_recovered(self):
        training = [nearest_neighbor_marks(sample_poisson(40, TorusWindow(), s)) for s in range(30)]
        model = fit_baseline(training, 2, grid=[1e-8])
        test = nearest_neighbor_marks(sample_poisson(40, TorusWindow(), 99))
        predicted = predict_baseline(model, test.pattern)
        assert np.sqrt(np.mean((predicted - test.marks) ** 2)) <= 1e-10

    def test_constant_marks_predict_the_constant(self):
        training = []
        for s in range(10):
            p = sample_poisson(40, TorusWindow(), s)
            training.append(p.with_marks(np.full(len(p), 2.5)))
        model = fit_baseline(training, 4)
        np.testing.assert_allclose(model.ridge.coefficients, 0.0, atol=1e-12)
        np.testing.assert_allclose(predict_baseline(model, training[0].pattern), 2.5)

    def test_small_patterns_are_skipped(self, log_records):
        training = [nearest_neighbor_marks(sample_poisson(40, TorusWindow(), s)) for s in range(5)]
        tiny = sample_poisson(40, TorusWindow(), 0)
        training.append(nearest_neighbor_marks(PointPattern(tiny.window, tiny.points[:3])))
        fit_baseline(training, 5, grid=[1.0])
        assert "Skipped training patterns smaller than K" in log_records.messages()

    def test_not_enough_samples(self):
        p = nearest_neighbor_marks(sample_poisson(40, TorusWindow(), 1))
        with pytest.raises(InsufficientDataError):
            fit_baseline([p], 2, min_samples=1000)

    def test_feature_dimension_checked(self, rng):
        X, Y, _, _ = _linear_data(rng, d=5, p=1)
        with pytest.raises(GeomarkConfigError):
            BaselineModel(3, fit_ridge(X, Y, 1.0))


class TestModelFiles:
    def test_ridge_model_round_trip(self, tmp_path, rng):
        X, Y, _, _ = _linear_data(rng)
        model = fit_ridge(X, Y, [0.1, 1.0, 10.0], output_labels=["a", "b", "c"])
        loaded = load_ridge_model(save_ridge_model(tmp_path / "m.json", model))
        np.testing.assert_array_equal(predict(loaded, X), predict(model, X))
        assert loaded.output_labels == ("a", "b", "c")

    def test_baseline_model_round_trip(self, tmp_path):
        training = [nearest_neighbor_marks(sample_poisson(40, TorusWindow(), s)) for s in range(5)]
        model = fit_baseline(training, 3, grid=[1.0])
        loaded = load_baseline_model(save_baseline_model(tmp_path / "b.json", model))
        assert loaded.k_neighbors == 3
        np.testing.assert_array_equal(
            predict_baseline(loaded, training[0].pattern),
            predict_baseline(model, training[0].pattern),
        )

    def test_inconsistent_file_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"feature_labels":["x"],"output_labels":["y"],"lambdas":[1],"intercepts":[0],'
            '"coefficients":[1,2],"standardization":{"means":[0],"stds":[1]}}'
        )
        with pytest.raises(GeomarkConfigError):
            load_ridge_model(path)
