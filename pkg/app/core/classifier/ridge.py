"""
One-vs-rest regularized linear least squares.

Features are z-scored on the training frames; targets are +1 for the class and -1 otherwise.
W solves (Xs^T Xs + lambda I) W = Xs^T Y with a symmetric positive-definite solve; the bias is the
per-class mean target, so scores collapse to the target priors as lambda grows.
"""

from typing import Sequence

import numpy as np
import scipy.linalg

from app.core.exceptions import DatasetError, DimensionMismatchError, EmptyInputError, UserInputError
from app.models.entities.ridge_model import RidgeModel
from app.utils.logger import eval_logger


def one_vs_rest_targets(y: np.ndarray, class_count: int) -> np.ndarray:
    targets = -np.ones((y.size, class_count))
    targets[np.arange(y.size), y] = 1.0
    return targets


def _standardize(model: RidgeModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.shape[-1] != model.feature_dim:
        raise DimensionMismatchError(model.feature_dim, X.shape[-1], "classifier feature")
    kept = model.kept
    return (X[..., kept] - model.mean[kept]) / model.scale[kept]


def train_ridge(X: np.ndarray, y: np.ndarray, lambda_: float, class_count: int | None = None) -> RidgeModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyInputError("ridge training needs a non-empty frames x features matrix")
    if y.shape != (X.shape[0],):
        raise DimensionMismatchError(X.shape[0], y.size, "label vector")
    if not np.all(np.isfinite(X)):
        raise UserInputError("ridge training features contain non-finite values")
    if lambda_ <= 0:
        raise UserInputError(f"lambda must be positive, got {lambda_}")

    class_count = int(class_count if class_count is not None else y.max() + 1)
    counts = np.bincount(y, minlength=class_count)
    if np.any(counts == 0) or counts.size != class_count:
        raise DatasetError(f"every class needs at least one training frame, counts {counts.tolist()}")

    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    kept = scale > 0.0
    if not np.all(kept):
        eval_logger.warning(f"dropping {int((~kept).sum())} zero-variance feature dimension(s)")
    safe_scale = np.where(kept, scale, 1.0)

    Xs = (X[:, kept] - mean[kept]) / safe_scale[kept]
    Y = one_vs_rest_targets(y, class_count)
    gram = Xs.T @ Xs
    gram[np.diag_indices_from(gram)] += lambda_
    W = scipy.linalg.solve(gram, Xs.T @ Y, assume_a="pos") if Xs.shape[1] else np.zeros((0, class_count))

    return RidgeModel(
        W=W,
        b=Y.mean(axis=0),
        lambda_=float(lambda_),
        feature_dim=X.shape[1],
        class_count=class_count,
        mean=mean,
        scale=safe_scale,
        kept=kept,
    )


def decision_scores(model: RidgeModel, X: np.ndarray) -> np.ndarray:
    return _standardize(model, X) @ model.W + model.b


def predict_frame(model: RidgeModel, feature: np.ndarray) -> int:
    """Argmax of the class scores; ties go to the lowest class index."""
    feature = np.asarray(feature, dtype=np.float64)
    if feature.ndim != 1:
        raise DimensionMismatchError(1, feature.ndim, "frame feature rank")
    return int(np.argmax(decision_scores(model, feature)))


def predict_frames(model: RidgeModel, X: np.ndarray) -> np.ndarray:
    return np.argmax(decision_scores(model, X), axis=1)


def majority_vote(frame_labels: Sequence[int]) -> int:
    """Most frequent label; ties go to the lowest class index."""
    labels = np.asarray(frame_labels, dtype=np.int64)
    if labels.size == 0:
        raise EmptyInputError("cannot vote over an empty label list")
    return int(np.argmax(np.bincount(labels)))


def objective_gradient(model: RidgeModel, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Gradient of ||Xs W + b - Y||^2 + lambda ||W||^2 with respect to W."""
    Xs = _standardize(model, X)
    residual = Xs @ model.W + model.b - one_vs_rest_targets(np.asarray(y), model.class_count)
    return 2.0 * (Xs.T @ residual + model.lambda_ * model.W)


def select_lambda(
    X: np.ndarray, y: np.ndarray, groups: Sequence[str], grid: Sequence[float], folds: int, seed: int
) -> float:
    """k-fold CV over whole tracks (groups) of the training set; frame accuracy, ties to the larger lambda."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    groups = np.asarray(groups)
    unique_groups = np.unique(groups)
    folds = min(folds, unique_groups.size)
    if folds < 2:
        raise DatasetError("lambda search needs at least two training tracks")

    class_count = int(y.max() + 1)
    order = np.random.default_rng(seed).permutation(unique_groups.size)
    fold_of = {unique_groups[index]: position % folds for position, index in enumerate(order)}
    assignment = np.array([fold_of[group] for group in groups])

    best_lambda, best_accuracy = None, -1.0
    for lambda_ in sorted(grid):
        correct = 0
        evaluated = 0
        for fold in range(folds):
            held_out = assignment == fold
            train_y = y[~held_out]
            if np.unique(train_y).size < class_count:
                continue
            model = train_ridge(X[~held_out], train_y, lambda_, class_count)
            correct += int(np.sum(predict_frames(model, X[held_out]) == y[held_out]))
            evaluated += int(held_out.sum())
        accuracy = correct / evaluated if evaluated else 0.0
        eval_logger.info(f"lambda={lambda_:g} cv frame accuracy={accuracy:.4f}")
        if accuracy >= best_accuracy:
            best_lambda, best_accuracy = lambda_, accuracy
    return float(best_lambda)
