from pathlib import Path

import numpy as np
import pytest

from app.controllers.synth_controller import SynthController
from app.models.entities.audio_clip import AudioClip
from app.models.schemas.experiment_schema import ExperimentConfig, InvarianceSuiteSettings, SynthSettings
from app.models.schemas.pipeline_schema import MaxPoolLayerConfig, PipelineConfig, PitchLayerConfig, WarpLayerConfig
from app.models.schemas.spectrogram_schema import SpectrogramSettings

SAMPLE_RATE = 8000


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_spectrogram() -> SpectrogramSettings:
    """512-sample windows, 256-sample hop, 32 output bins"""
    return SpectrogramSettings(sample_rate=SAMPLE_RATE, window_ms=64.0, hop_ms=32.0, reduced_bins=32)


@pytest.fixture
def small_pipeline(small_spectrogram) -> PipelineConfig:
    return PipelineConfig(
        base=small_spectrogram,
        warp_layer=WarpLayerConfig(n_templates=6, epsilon_count=5, epsilon_span=0.2),
        maxpool_layer=MaxPoolLayerConfig(width=4, stride=2),
        pitch_layer=PitchLayerConfig(n_templates=4, max_shift=2, shift_step=1),
    )


@pytest.fixture
def tone_clip() -> AudioClip:
    """One second of a 440 Hz tone with two harmonics"""
    t = np.arange(SAMPLE_RATE) / SAMPLE_RATE
    samples = 0.5 * np.sin(2 * np.pi * 440 * t) + 0.2 * np.sin(2 * np.pi * 880 * t) + 0.1 * np.sin(2 * np.pi * 1320 * t)
    return AudioClip(samples=samples, sample_rate=SAMPLE_RATE)


@pytest.fixture
def small_synth() -> SynthSettings:
    return SynthSettings(n_classes=3, tracks_per_class=4, duration_s=1.0, sample_rate=SAMPLE_RATE, n_harmonics=4)


@pytest.fixture
def experiment(tmp_path: Path, small_pipeline, small_synth) -> ExperimentConfig:
    """Experiment over a freshly synthesized 3 x 4 corpus; outputs and cache live under tmp_path."""
    config = ExperimentConfig(
        output_dir=str(tmp_path / "run"),
        cache_dir=str(tmp_path / "cache"),
        pipeline=small_pipeline,
        synth=small_synth,
        invariance=InvarianceSuiteSettings(n_inputs=10, dim=16, n_templates=4, max_tracks=6),
    )
    corpus = config.with_overrides(output_dir=str(tmp_path / "corpus"))
    manifest_path = SynthController(corpus).synthesize()
    return config.with_overrides(manifest_path=str(manifest_path))
