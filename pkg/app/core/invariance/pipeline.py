"""
Four-layer cascade: log-spectrogram -> warp-invariant signatures -> max pooling over neighbouring
frames -> pitch-invariant signatures over third-layer templates.
"""

import math
from typing import Callable

import numpy as np

from app.core.audio.signal_io import conform_sample_rate
from app.core.audio.spectrogram import base_frame, log_spectrogram, mfcc_sequence
from app.core.exceptions import ConfigHashMismatchError, DimensionMismatchError, FramingError, UserInputError
from app.core.invariance.pooling import signature_rows
from app.core.invariance.template_bank import build_bank, sample_templates
from app.models.entities.audio_clip import AudioClip
from app.models.entities.feature_sequence import FeatureSequence
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.entities.template_orbit import TemplateBank
from app.models.schemas.pipeline_schema import PipelineConfig
from app.models.schemas.pooling_schema import PoolingSpec
from app.utils.enum import LayerTag, Stage
from app.utils.logger import pipeline_logger

ClipLoader = Callable[[ManifestEntry], AudioClip]


def layer1(clip: AudioClip, config: PipelineConfig) -> FeatureSequence:
    """Base layer: (frequency-reduced) log-spectrogram frames."""
    return FeatureSequence(rows=log_spectrogram(clip, config.base).values, stage_tag=Stage.BASE.value)


def _check_bank_dim(seq: FeatureSequence, bank: TemplateBank) -> None:
    if seq.dim != bank.dim:
        raise DimensionMismatchError(bank.dim, seq.dim, f"{bank.layer_tag} bank input")


def center_frames(rows: np.ndarray) -> np.ndarray:
    """Subtract each frame's mean (a log-domain gain); constant frames, e.g. digital silence, become exactly zero."""
    rows = np.asarray(rows, dtype=np.float64)
    centered = rows - rows.mean(axis=-1, keepdims=True)
    centered[np.ptp(rows, axis=-1) == 0.0] = 0.0
    return centered


def layer2_warp(seq: FeatureSequence, bank: TemplateBank, spec: PoolingSpec, center: bool = False) -> FeatureSequence:
    """Per-frame signatures over warped-template orbits; row count preserved.

    `center` must match how the bank members were built (see `build_warp_bank`).
    """
    _check_bank_dim(seq, bank)
    rows = center_frames(seq.rows) if center else seq.rows
    return FeatureSequence(rows=signature_rows(rows, bank, spec), stage_tag=Stage.WARP.value)


def layer3_maxpool(seq: FeatureSequence, width: int, stride: int) -> FeatureSequence:
    """Componentwise max over rows [j*stride, j*stride + width); full windows only."""
    if width < 1 or stride < 1:
        raise UserInputError(f"pooling width and stride must be >= 1, got {width}/{stride}")
    if len(seq) < width:
        raise FramingError(f"{len(seq)} rows cannot fill a {width}-frame pooling window")
    windows = np.lib.stride_tricks.sliding_window_view(seq.rows, width, axis=0)[::stride]
    return FeatureSequence(rows=windows.max(axis=-1), stage_tag=f"{seq.stage_tag}+translation")


def layer4_pitch(seq: FeatureSequence, bank: TemplateBank, spec: PoolingSpec) -> FeatureSequence:
    """Per-row signatures over pitch-shifted templates in their third-layer representation."""
    _check_bank_dim(seq, bank)
    return FeatureSequence(rows=signature_rows(seq.rows, bank, spec), stage_tag=f"{seq.stage_tag}+pitch")


# region bank recipes
def warp_segment_samples(config: PipelineConfig) -> int:
    """Raw template length such that every warped copy still fills one analysis window from source audio."""
    stretch = 1.0 + max(0.0, max(config.warp_layer.transform_spec().parameters))
    return int(math.ceil((config.base.window_samples - 1) * stretch)) + 1


def warp_template_provider(config: PipelineConfig, loader: ClipLoader) -> Callable[[ManifestEntry], np.ndarray]:
    """Raw audio segments at hop positions, long enough for the largest warp; silent leading windows are skipped."""
    length = warp_segment_samples(config)
    hop = config.base.hop_samples
    # every warped copy reads at least this prefix
    shrink = 1.0 + min(0.0, min(config.warp_layer.transform_spec().parameters))
    prefix = int(math.floor((config.base.window_samples - 1) * shrink)) + 1

    def provider(entry: ManifestEntry) -> np.ndarray:
        samples = conform_sample_rate(loader(entry), config.base.sample_rate, config.base.resample).samples
        if samples.size < length:
            return np.empty((0, length))
        segments = np.lib.stride_tricks.sliding_window_view(samples, length)[::hop]
        return segments[np.any(segments[:, :prefix] != 0.0, axis=1)]

    return provider


def pitch_template_provider(config: PipelineConfig, loader: ClipLoader) -> Callable[[ManifestEntry], np.ndarray]:
    """Blocks of `width` consecutive base frames, one per layer-3 pooling position (P x width x d)."""
    width, stride = config.maxpool_layer.width, config.maxpool_layer.stride

    def provider(entry: ManifestEntry) -> np.ndarray:
        rows = layer1(loader(entry), config).rows
        if rows.shape[0] < width:
            return np.empty((0, width, rows.shape[1]))
        blocks = np.lib.stride_tricks.sliding_window_view(rows, width, axis=0)[::stride]
        return np.ascontiguousarray(blocks.transpose(0, 2, 1))

    return provider


def build_warp_bank(train: DatasetManifest, config: PipelineConfig, loader: ClipLoader, jobs: int = 1) -> TemplateBank:
    """Sample raw audio segments, warp each by every epsilon, keep the base-layer frame of each warped window."""
    layer = config.warp_layer
    window = config.base.window_samples

    def representation(segment: np.ndarray) -> np.ndarray:
        frame = base_frame(segment[:window], config.base)
        return center_frames(frame) if layer.center_frames else frame

    templates = sample_templates(train, layer.n_templates, warp_template_provider(config, loader), layer.seed)
    return build_bank(
        templates,
        layer.transform_spec(),
        LayerTag.WARP.value,
        config.warp_bank_hash(train.fingerprint()),
        representation=representation,
        jobs=jobs,
    )


def build_pitch_bank(
    train: DatasetManifest, config: PipelineConfig, warp_bank: TemplateBank, loader: ClipLoader, jobs: int = 1
) -> TemplateBank:
    """Pitch-shift sampled base-frame blocks, propagate each through layers 2-3, store the layer-3 vectors."""
    training = train.fingerprint()
    if warp_bank.config_hash != config.warp_bank_hash(training):
        raise ConfigHashMismatchError("warp bank", config.warp_bank_hash(training), warp_bank.config_hash)
    layer = config.pitch_layer
    width, stride = config.maxpool_layer.width, config.maxpool_layer.stride

    def third_layer(block: np.ndarray) -> np.ndarray:
        seq = layer2_warp(
            FeatureSequence(rows=block, stage_tag=Stage.BASE.value),
            warp_bank,
            config.warp_layer.pooling,
            config.warp_layer.center_frames,
        )
        return layer3_maxpool(seq, width, stride).rows[0]

    templates = sample_templates(train, layer.n_templates, pitch_template_provider(config, loader), layer.seed)
    return build_bank(
        templates,
        layer.transform_spec(),
        LayerTag.PITCH.value,
        config.pitch_bank_hash(training),
        representation=third_layer,
        jobs=jobs,
        fill_value=math.log(config.base.log_floor),
    )


# endregion


class FeaturePipeline:
    """Immutable config + banks; banks are checked against the config hashes on construction.

    `training` is the fingerprint of the training track set the banks were sampled from.
    """

    def __init__(
        self,
        config: PipelineConfig,
        warp_bank: TemplateBank | None = None,
        pitch_bank: TemplateBank | None = None,
        training: str = "",
    ):
        if config.warp_layer.enabled:
            self._require(warp_bank, "warp", config.warp_bank_hash(training))
        if config.pitch_layer.enabled:
            self._require(pitch_bank, "pitch", config.pitch_bank_hash(training))
        self._config = config
        self._warp_bank = warp_bank
        self._pitch_bank = pitch_bank
        self._training = training

    @staticmethod
    def _require(bank: TemplateBank | None, name: str, expected_hash: str) -> None:
        if bank is None:
            raise UserInputError(f"{name} layer is enabled but no {name} bank was provided")
        if bank.config_hash != expected_hash:
            raise ConfigHashMismatchError(f"{name} bank", expected_hash, bank.config_hash)

    @property
    def config(self) -> PipelineConfig:
        return self._config

    @property
    def stage(self) -> Stage:
        return self._config.stage

    @property
    def training(self) -> str:
        return self._training

    def for_stage(self, stage: Stage) -> "FeaturePipeline":
        """Same banks, enable flags of `stage`"""
        config = self._config.for_stage(stage)
        return FeaturePipeline(
            config,
            self._warp_bank if config.warp_layer.enabled else None,
            self._pitch_bank if config.pitch_layer.enabled else None,
            self._training,
        )

    def feature_hash(self, stage: Stage | None = None) -> str:
        """Cache key of `stage` features: settings plus the hashes of the banks in use."""
        return self._config.config_hash(stage, self._training)

    def extract(self, clip: AudioClip) -> FeatureSequence:
        """Run the enabled layers in order."""
        config = self._config
        seq = layer1(clip, config)
        if config.warp_layer.enabled:
            seq = layer2_warp(seq, self._warp_bank, config.warp_layer.pooling, config.warp_layer.center_frames)
        if config.maxpool_layer.enabled:
            seq = layer3_maxpool(seq, config.maxpool_layer.width, config.maxpool_layer.stride)
        if config.pitch_layer.enabled:
            seq = layer4_pitch(seq, self._pitch_bank, config.pitch_layer.pooling)
        pipeline_logger.debug(f"extracted {len(seq)} x {seq.dim} '{seq.stage_tag}' rows")
        return seq

    def extract_stage(self, clip: AudioClip, stage: Stage) -> FeatureSequence:
        """Features of any ablation stage, including the MFCC baseline."""
        stage = Stage(stage)
        if stage == Stage.MFCC:
            return mfcc_sequence(clip, self._config.base, self._config.mfcc)
        return self.for_stage(stage).extract(clip)
