from typing import Any, Dict, List

from pydantic import BaseModel, Field, model_validator

from app.utils.enum import Stage


class FramePrediction(BaseModel):
    track_id: str
    frame_index: int
    predicted: int
    true: int


class EvalReport(BaseModel):
    stage: Stage
    stage_label: str
    class_names: List[str]
    frame_error_rate: float = Field(ge=0, le=1)
    track_error_rate: float = Field(ge=0, le=1)
    confusion: List[List[int]] = Field(description="Rows true class, columns predicted class, track counts")
    per_class_accuracy: List[float]
    n_train_tracks: int
    n_test_tracks: int
    n_train_frames: int
    n_test_frames: int
    feature_dim: int
    lambda_: float = Field(alias="lambda")
    split_seed: int
    config_hash: str
    track_predictions: Dict[str, int] = Field(default_factory=dict)
    frame_predictions: List[FramePrediction] = Field(default_factory=list)

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def check_confusion(self):
        if sum(map(sum, self.confusion)) != self.n_test_tracks:
            raise ValueError("confusion matrix total differs from test track count")
        return self


class InvarianceCheck(BaseModel):
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: Dict[str, Any] = Field(default_factory=dict)


class InvarianceReport(BaseModel):
    config_hash: str
    checks: List[InvarianceCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
