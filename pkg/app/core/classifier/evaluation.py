"""
Frame-based, majority-voting evaluation: train on every training frame, classify every test frame
independently, label each test track by vote.
"""

from typing import Callable, Iterable, List

import numpy as np

from app.core.classifier.ridge import majority_vote, predict_frames, select_lambda, train_ridge
from app.core.exceptions import DatasetError
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.schemas.experiment_schema import ClassifierSettings
from app.models.schemas.report_schema import EvalReport, FramePrediction
from app.utils.enum import Stage
from app.utils.logger import eval_logger

FeatureProvider = Callable[[ManifestEntry], np.ndarray]


def _stack(manifest: DatasetManifest, features: FeatureProvider):
    blocks, labels, groups = [], [], []
    for entry in sorted(manifest.entries, key=lambda item: item.track_id):
        rows = np.asarray(features(entry), dtype=np.float64)
        blocks.append(rows)
        labels.append(np.full(rows.shape[0], entry.label))
        groups.extend([entry.track_id] * rows.shape[0])
    return np.vstack(blocks), np.concatenate(labels), groups


def evaluate(
    train: DatasetManifest,
    test: DatasetManifest,
    features: FeatureProvider,
    stage: Stage,
    classifier: ClassifierSettings,
    split_seed: int,
    config_hash: str,
    seed: int = 0,
) -> EvalReport:
    """Train, predict and vote; tracks are processed in track_id order so input order never matters."""
    if len(train) == 0 or len(test) == 0:
        raise DatasetError("evaluation needs non-empty train and test sets")
    if train.class_names != test.class_names:
        raise DatasetError("train and test manifests disagree on class names")
    class_names = list(train.class_names)
    class_count = len(class_names)

    X, y, groups = _stack(train, features)
    lambda_ = classifier.lambda_
    if classifier.grid_search:
        lambda_ = select_lambda(X, y, groups, classifier.lambda_grid, classifier.cv_folds, seed)
        eval_logger.info(f"selected lambda={lambda_:g}")
    model = train_ridge(X, y, lambda_, class_count)

    confusion = np.zeros((class_count, class_count), dtype=np.int64)
    frame_predictions: List[FramePrediction] = []
    track_predictions = {}
    frame_errors = 0
    n_test_frames = 0
    for entry in sorted(test.entries, key=lambda item: item.track_id):
        predicted = predict_frames(model, features(entry))
        vote = majority_vote(predicted)
        track_predictions[entry.track_id] = vote
        confusion[entry.label, vote] += 1
        frame_errors += int(np.sum(predicted != entry.label))
        n_test_frames += predicted.size
        frame_predictions.extend(
            FramePrediction(track_id=entry.track_id, frame_index=index, predicted=int(label), true=entry.label)
            for index, label in enumerate(predicted)
        )

    per_class_total = confusion.sum(axis=1)
    per_class_accuracy = np.divide(
        np.diag(confusion), per_class_total, out=np.zeros(class_count), where=per_class_total > 0
    )
    n_test_tracks = len(test)
    stage = Stage(stage)
    report = EvalReport(
        stage=stage,
        stage_label=stage.label,
        class_names=class_names,
        frame_error_rate=frame_errors / n_test_frames,
        track_error_rate=1.0 - np.trace(confusion) / n_test_tracks,
        confusion=confusion.tolist(),
        per_class_accuracy=per_class_accuracy.tolist(),
        n_train_tracks=len(train),
        n_test_tracks=n_test_tracks,
        n_train_frames=int(X.shape[0]),
        n_test_frames=n_test_frames,
        feature_dim=int(X.shape[1]),
        lambda_=float(lambda_),
        split_seed=split_seed,
        config_hash=config_hash,
        track_predictions=track_predictions,
        frame_predictions=frame_predictions,
    )
    eval_logger.info(
        f"{stage.label}: track error {report.track_error_rate:.3f}, frame error {report.frame_error_rate:.3f}"
    )
    return report


def format_table(reports: Iterable[EvalReport]) -> str:
    """Plain-text summary, one row per stage."""
    reports = list(reports)
    width = max([len("Feature")] + [len(report.stage_label) for report in reports])
    lines = [
        f"{'Feature':<{width}}  {'Track error (%)':>15}  {'Frame error (%)':>15}",
        "-" * (width + 34),
    ]
    for report in reports:
        lines.append(
            f"{report.stage_label:<{width}}  "
            f"{100 * report.track_error_rate:>15.1f}  {100 * report.frame_error_rate:>15.1f}"
        )
    if reports:
        first = reports[0]
        lines.append("")
        lines.append(f"split seed {first.split_seed}, lambda {first.lambda_:g}")
        lines.extend(f"{report.stage.value}: config {report.config_hash}" for report in reports)
    return "\n".join(lines)
