import json
from pathlib import Path
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import CONFIG
from app.models.schemas.pipeline_schema import PipelineConfig
from app.utils.enum import CachePolicy


class ClassifierSettings(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(default=1.0, gt=0, alias="lambda", description="Ridge regularization strength")
    grid_search: bool = Field(default=False, description="Pick lambda by k-fold CV on training frames")
    lambda_grid: List[float] = Field(default=[1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3], min_length=1)
    cv_folds: int = Field(default=5, ge=2)


class SynthSettings(BaseModel):
    """Procedural stand-in corpus: harmonic stacks with rhythm envelopes, per-track warp/pitch jitter and noise."""

    model_config = ConfigDict(frozen=True)

    n_classes: int = Field(default=5, ge=2)
    tracks_per_class: int = Field(default=40, ge=2)
    duration_s: float = Field(default=5.0, gt=0)
    sample_rate: int = Field(default=CONFIG.SAMPLE_RATE, gt=0)
    snr_db: float | None = Field(default=20.0, description="Additive white noise SNR; null for no noise")
    warp_jitter: float = Field(default=0.3, ge=0, lt=1, description="Per-track epsilon drawn from [-jitter, jitter]")
    pitch_jitter_semitones: float = Field(default=1.0, ge=0)
    n_harmonics: int = Field(default=8, ge=1)
    seed: int = Field(default=0, ge=0)


class InvarianceSuiteSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_inputs: int = Field(default=100, ge=1)
    dim: int = Field(default=64, ge=2)
    n_templates: int = Field(default=16, ge=1)
    tolerance: float = Field(default=1e-9, gt=0)
    epsilons: List[float] = Field(default=[-0.2, -0.1, 0.1, 0.2], min_length=1)
    max_tracks: int = Field(default=20, ge=1, description="Test tracks used by the warp contrast suite")
    seed: int = Field(default=0, ge=0)


class ExperimentConfig(BaseModel):
    """Root of the JSON config file (schema_version 1). CLI flags override individual fields."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: Literal[1] = 1
    manifest_path: str | None = Field(default=None, description="CSV manifest track_id,path,label")
    output_dir: str = Field(default="runs/default")
    cache_dir: str | None = Field(default=None, description="Feature cache; CONFIG.CACHE_DIR when unset")
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    classifier: ClassifierSettings = Field(default_factory=ClassifierSettings)
    split_seed: int = Field(default=0, ge=0)
    train_fraction: float = Field(default=0.8, gt=0, lt=1)
    cache_policy: CachePolicy = CachePolicy.USE
    jobs: int = Field(default=CONFIG.JOBS, ge=1)
    synth: SynthSettings = Field(default_factory=SynthSettings)
    invariance: InvarianceSuiteSettings = Field(default_factory=InvarianceSuiteSettings)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        """Re-validated copy with the overrides applied; None clears an optional field."""
        payload = self.model_dump(mode="json", by_alias=True)
        payload.update(overrides)
        return ExperimentConfig.model_validate(payload)

    @property
    def resolved_cache_dir(self) -> Path:
        return Path(self.cache_dir or CONFIG.CACHE_DIR)

    def dump(self) -> str:
        return json.dumps(self.model_dump(mode="json", by_alias=True), indent=2, sort_keys=True)
