from pathlib import Path
from typing import Tuple

from app.core.audio.signal_io import load_audio, split_dataset
from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error
from app.core.exceptions import UserInputError
from app.core.invariance.pipeline import FeaturePipeline
from app.dal.bank_dal import BankDAL
from app.dal.manifest_dal import ManifestDAL
from app.models.entities.audio_clip import AudioClip
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.schemas.experiment_schema import ExperimentConfig
from app.utils.enum import LayerTag, Stage
from app.utils.logger import cli_logger


@decorateAllFunctionInClass(log_and_raise_error(cli_logger))
class BaseController:
    """
    Base controller class that provides common functionality for all controllers:
    the experiment config, manifest access, the train/test split and bank locations.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.output_dir = Path(config.output_dir)
        self.log = cli_logger
        self.manifest_dal = ManifestDAL()
        self.bank_dal = BankDAL()

    def load_manifest(self) -> DatasetManifest:
        if not self.config.manifest_path:
            raise UserInputError("no manifest_path configured")
        return self.manifest_dal.read(self.config.manifest_path, self.config.split_seed)

    def split(self, manifest: DatasetManifest | None = None) -> Tuple[DatasetManifest, DatasetManifest]:
        manifest = manifest or self.load_manifest()
        return split_dataset(manifest, self.config.train_fraction, self.config.split_seed)

    def load_clip(self, entry: ManifestEntry) -> AudioClip:
        return load_audio(entry.path)

    def bank_path(self, layer: LayerTag) -> Path:
        pipeline = self.config.pipeline
        configured = pipeline.warp_layer.bank_path if layer == LayerTag.WARP else pipeline.pitch_layer.bank_path
        return Path(configured) if configured else self.output_dir / "banks" / f"{layer.value}.tbk"

    def training_fingerprint(self) -> str:
        """Identity of the training split the banks are sampled from"""
        train, _ = self.split()
        return train.fingerprint()

    def stage_hash(self, stage: Stage) -> str:
        """Feature hash of `stage`, tied to the banks of the current training split when it uses any."""
        pipeline = self.config.pipeline
        training = self.training_fingerprint() if pipeline.for_stage(stage).warp_layer.enabled else ""
        return pipeline.config_hash(stage, training)

    def feature_pipeline(self, stage: Stage) -> FeaturePipeline:
        """Pipeline for `stage`, loading only the banks that stage needs."""
        config = self.config.pipeline.for_stage(stage)
        training = self.training_fingerprint() if config.warp_layer.enabled else ""
        warp_bank = pitch_bank = None
        if config.warp_layer.enabled:
            warp_bank = self.bank_dal.load(self.bank_path(LayerTag.WARP), config.warp_bank_hash(training))
        if config.pitch_layer.enabled:
            pitch_bank = self.bank_dal.load(self.bank_path(LayerTag.PITCH), config.pitch_bank_hash(training))
        return FeaturePipeline(config, warp_bank, pitch_bank, training)
