import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.classifier.ridge import (
    decision_scores,
    majority_vote,
    objective_gradient,
    one_vs_rest_targets,
    predict_frame,
    predict_frames,
    select_lambda,
    train_ridge,
)
from app.core.exceptions import DatasetError, EmptyInputError, UserInputError
from app.models.entities.ridge_model import RidgeModel


def normal_equations_oracle(X, y, lambda_, class_count):
    mean, scale = X.mean(axis=0), X.std(axis=0)
    Xs = (X - mean) / scale
    Y = one_vs_rest_targets(y, class_count)
    return np.linalg.solve(Xs.T @ Xs + lambda_ * np.eye(X.shape[1]), Xs.T @ Y)


class TestTrainRidge:
    def test_separable_toy(self):
        model = train_ridge(np.eye(2), np.array([0, 1]), 1e-8)
        scores = decision_scores(model, np.array([1.0, 0.0]))
        assert scores[0] > scores[1]
        np.testing.assert_array_equal(predict_frames(model, np.eye(2)), [0, 1])

    def test_huge_lambda_collapses_to_priors(self, rng):
        X = rng.standard_normal((40, 5))
        y = np.array([0] * 10 + [1] * 30)
        model = train_ridge(X, y, 1e12)
        assert np.max(np.abs(model.W)) < 1e-9
        np.testing.assert_allclose(decision_scores(model, X), np.tile([-0.5, 0.5], (40, 1)), atol=1e-8)

    def test_matches_oracle(self, rng):
        X = rng.standard_normal((50, 10))
        y = rng.integers(0, 3, 50)
        y[:3] = [0, 1, 2]
        model = train_ridge(X, y, 1.0)
        np.testing.assert_allclose(model.W, normal_equations_oracle(X, y, 1.0, 3), rtol=1e-8, atol=1e-12)

    @given(st.integers(20, 500), st.integers(1, 200), st.integers(2, 6), st.floats(1e-2, 1e2))
    @settings(max_examples=15, deadline=None)
    def test_oracle_and_stationarity(self, n, d, classes, lambda_):
        rng = np.random.default_rng(n * 1000 + d)
        X = rng.standard_normal((n, d))
        y = np.arange(n) % classes
        model = train_ridge(X, y, lambda_)
        oracle = normal_equations_oracle(X, y, lambda_, classes)
        np.testing.assert_allclose(model.W, oracle, rtol=1e-8, atol=1e-10 * np.max(np.abs(oracle)))
        scale = np.linalg.norm(X) * np.sqrt(n * classes) + lambda_
        assert np.linalg.norm(objective_gradient(model, X, y)) <= 1e-6 * scale

    def test_constant_column_is_dropped(self, rng):
        X = np.column_stack([rng.standard_normal(20), np.ones(20)])
        model = train_ridge(X, np.arange(20) % 2, 1.0)
        assert model.kept.tolist() == [True, False]
        assert model.W.shape == (1, 2)

    def test_missing_class(self, rng):
        with pytest.raises(DatasetError):
            train_ridge(rng.standard_normal((4, 2)), np.array([0, 0, 2, 2]), 1.0, class_count=3)

    def test_invalid_inputs(self, rng):
        with pytest.raises(UserInputError):
            train_ridge(rng.standard_normal((4, 2)), np.array([0, 1, 0, 1]), 0.0)
        with pytest.raises(EmptyInputError):
            train_ridge(np.empty((0, 2)), np.empty(0, dtype=int), 1.0)


def identity_model(scores_bias) -> RidgeModel:
    """A model whose scores are exactly its bias"""
    k = len(scores_bias)
    return RidgeModel(
        W=np.zeros((1, k)),
        b=np.array(scores_bias),
        lambda_=1.0,
        feature_dim=1,
        class_count=k,
        mean=np.zeros(1),
        scale=np.ones(1),
        kept=np.array([True]),
    )


class TestPrediction:
    def test_argmax(self):
        assert predict_frame(identity_model([0.2, 0.9, 0.1]), np.zeros(1)) == 1

    def test_tie_goes_to_lower_index(self):
        assert predict_frame(identity_model([0.5, 0.7, 0.7]), np.zeros(1)) == 1


class TestMajorityVote:
    def test_plurality(self):
        assert majority_vote([2, 2, 5]) == 2

    def test_tie(self):
        assert majority_vote([3, 1]) == 1

    def test_strict_majority(self):
        labels = [7] * 81 + list(np.arange(80) % 7)
        assert majority_vote(labels) == 7

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            majority_vote([])


class TestSelectLambda:
    def test_picks_from_grid_deterministically(self, rng):
        X = rng.standard_normal((60, 4))
        y = (X[:, 0] > 0).astype(int)
        groups = [f"t{i // 5}" for i in range(60)]
        grid = [0.01, 1.0, 100.0]
        first = select_lambda(X, y, groups, grid, folds=3, seed=0)
        assert first in grid
        assert first == select_lambda(X, y, groups, grid, folds=3, seed=0)

    def test_ties_prefer_larger_lambda(self):
        X = np.array([[1.0], [1.1], [-1.0], [-1.1]] * 2)
        y = np.array([1, 1, 0, 0] * 2)
        groups = ["a", "b", "c", "d", "e", "f", "g", "h"]
        assert select_lambda(X, y, groups, [0.1, 1.0], folds=2, seed=0) == 1.0

    def test_single_track(self):
        with pytest.raises(DatasetError):
            select_lambda(np.ones((3, 1)), np.array([0, 1, 0]), ["a"] * 3, [1.0], folds=5, seed=0)
