from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.schemas.pooling_schema import PoolingSpec
from app.models.schemas.spectrogram_schema import MfccSettings, SpectrogramSettings
from app.models.schemas.transform_schema import TransformSpec
from app.utils.conversion import config_hash
from app.utils.enum import Stage


class WarpLayerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    enabled: bool = True
    n_templates: int = Field(default=256, ge=1, description="K templates sampled from training audio")
    epsilon_count: int = Field(default=17, ge=1, description="Warp factors per orbit")
    epsilon_span: float = Field(default=0.4, gt=0, lt=1)
    pooling: PoolingSpec = Field(default_factory=PoolingSpec)
    center_frames: bool = Field(
        default=True, description="Subtract each base frame's mean before projecting, for templates and inputs alike"
    )
    seed: int = Field(default=1, ge=0)
    bank_path: str | None = Field(default=None, description="Prebuilt bank file; defaults to <out>/banks/warp.tbk")

    def transform_spec(self) -> TransformSpec:
        return TransformSpec.time_warp_grid(self.epsilon_count, self.epsilon_span)

    def recipe(self) -> dict:
        return self.model_dump(mode="json", exclude={"enabled", "bank_path"})


class MaxPoolLayerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    enabled: bool = True
    width: int = Field(default=8, ge=1, description="Frames per pooling neighbourhood")
    stride: int = Field(default=3, ge=1, description="Frames between pooling windows")


class PitchLayerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    enabled: bool = True
    n_templates: int = Field(default=256, ge=1)
    max_shift: int = Field(default=12, ge=0, description="Largest bin translation")
    shift_step: int = Field(default=2, ge=1)
    pooling: PoolingSpec = Field(default_factory=PoolingSpec)
    seed: int = Field(default=2, ge=0)
    bank_path: str | None = Field(default=None, description="Prebuilt bank file; defaults to <out>/banks/pitch.tbk")

    def transform_spec(self) -> TransformSpec:
        return TransformSpec.pitch_grid(self.max_shift, self.shift_step)

    def recipe(self) -> dict:
        return self.model_dump(mode="json", exclude={"enabled", "bank_path"})


class PipelineConfig(BaseModel):
    """Declarative layer stack: log-spectrogram -> warp invariance -> max pooling -> pitch invariance."""

    model_config = ConfigDict(frozen=True)

    base: SpectrogramSettings = Field(default_factory=SpectrogramSettings)
    warp_layer: WarpLayerConfig = Field(default_factory=WarpLayerConfig)
    maxpool_layer: MaxPoolLayerConfig = Field(default_factory=MaxPoolLayerConfig)
    pitch_layer: PitchLayerConfig = Field(default_factory=PitchLayerConfig)
    mfcc: MfccSettings = Field(default_factory=MfccSettings)

    @model_validator(mode="after")
    def check_layer_flags(self):
        if self.pitch_layer.enabled and not self.maxpool_layer.enabled:
            raise ValueError("pitch_layer requires maxpool_layer")
        if self.maxpool_layer.enabled and not self.warp_layer.enabled:
            raise ValueError("maxpool_layer requires warp_layer")
        return self

    @property
    def stage(self) -> Stage:
        """Deepest enabled layer"""
        if self.pitch_layer.enabled:
            return Stage.WARP_TRANSLATION_PITCH
        if self.maxpool_layer.enabled:
            return Stage.WARP_TRANSLATION
        if self.warp_layer.enabled:
            return Stage.WARP
        return Stage.BASE

    def for_stage(self, stage: Stage) -> "PipelineConfig":
        """Copy with the enable flags of the given ablation stage. MFCC maps to the base stack."""
        depth = {
            Stage.MFCC: 0,
            Stage.BASE: 0,
            Stage.WARP: 1,
            Stage.WARP_TRANSLATION: 2,
            Stage.WARP_TRANSLATION_PITCH: 3,
        }[Stage(stage)]
        return self.model_copy(
            update={
                "warp_layer": self.warp_layer.model_copy(update={"enabled": depth >= 1}),
                "maxpool_layer": self.maxpool_layer.model_copy(update={"enabled": depth >= 2}),
                "pitch_layer": self.pitch_layer.model_copy(update={"enabled": depth >= 3}),
            }
        )

    def warp_bank_hash(self, training: str = "") -> str:
        """`training` is the fingerprint of the track set the templates are sampled from."""
        return config_hash("warp-bank", self.base, self.warp_layer.recipe(), training)

    def pitch_bank_hash(self, training: str = "") -> str:
        return config_hash(
            "pitch-bank",
            self.base,
            self.warp_layer.recipe(),
            self.maxpool_layer.model_dump(mode="json", exclude={"enabled"}),
            self.pitch_layer.recipe(),
            training,
        )

    def config_hash(self, stage: Stage | None = None, training: str = "") -> str:
        """Hash of everything that determines the features of `stage` (default: the configured stage),
        including the hashes of the banks that stage projects onto."""
        stage = Stage(stage) if stage is not None else self.stage
        if stage == Stage.MFCC:
            return config_hash("features", stage.value, self.base, self.mfcc)
        cfg = self.for_stage(stage)
        banks = []
        if cfg.warp_layer.enabled:
            banks.append(cfg.warp_bank_hash(training))
        if cfg.pitch_layer.enabled:
            banks.append(cfg.pitch_bank_hash(training))
        return config_hash(
            "features",
            stage.value,
            cfg.model_dump(
                mode="json", exclude={"mfcc": True, "warp_layer": {"bank_path"}, "pitch_layer": {"bank_path"}}
            ),
            banks,
        )
