from pathlib import Path
from typing import Dict

from .base_controller import BaseController
from app.core.invariance.pipeline import build_pitch_bank, build_warp_bank
from app.models.schemas.experiment_schema import ExperimentConfig
from app.utils.enum import LayerTag
from app.utils.logger import bank_logger


class BankController(BaseController):
    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.log = bank_logger

    def build_banks(self) -> Dict[LayerTag, Path]:
        """
        Sample templates from the training split, build the warp bank and then the pitch bank on top of it.

        Return:
            Dict[LayerTag, Path]: where each enabled layer's bank was written
        """
        pipeline = self.config.pipeline
        train, _ = self.split()
        self.log.info(f"building banks from {len(train)} training tracks (split_seed={self.config.split_seed})")

        written: Dict[LayerTag, Path] = {}
        if not pipeline.warp_layer.enabled:
            self.log.warning("warp layer disabled; no banks to build")
            return written

        warp_bank = build_warp_bank(train, pipeline, self.load_clip, self.config.jobs)
        written[LayerTag.WARP] = self.bank_dal.save(warp_bank, self.bank_path(LayerTag.WARP))
        self.log.info(f"wrote {written[LayerTag.WARP]} (K={warp_bank.K} M={warp_bank.M} d={warp_bank.dim})")

        if pipeline.pitch_layer.enabled:
            pitch_bank = build_pitch_bank(train, pipeline, warp_bank, self.load_clip, self.config.jobs)
            written[LayerTag.PITCH] = self.bank_dal.save(pitch_bank, self.bank_path(LayerTag.PITCH))
            self.log.info(f"wrote {written[LayerTag.PITCH]} (K={pitch_bank.K} M={pitch_bank.M} d={pitch_bank.dim})")
        return written
