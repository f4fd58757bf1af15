from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable

from .base_controller import BaseController
from app.dal.feature_dal import FeatureCache
from app.models.entities.feature_sequence import FeatureSequence
from app.models.entities.manifest import ManifestEntry
from app.models.schemas.experiment_schema import ExperimentConfig
from app.utils.enum import CachePolicy, Stage
from app.utils.logger import pipeline_logger


class ExtractController(BaseController):
    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.log = pipeline_logger
        self.cache = FeatureCache(config.resolved_cache_dir)

    def extract(self, stage: Stage, entries: Iterable[ManifestEntry] | None = None) -> Dict[str, FeatureSequence]:
        """
        Features of `stage` for every track (the whole manifest by default), read from or written to the cache
        according to the cache policy.

        Return:
            Dict[str, FeatureSequence]: keyed by track_id
        """
        stage = Stage(stage)
        entries = sorted(entries if entries is not None else self.load_manifest().entries, key=lambda e: e.track_id)
        pipeline = self.feature_pipeline(stage)
        stage_hash = pipeline.feature_hash(stage)
        policy = self.config.cache_policy
        cfg = {"stage": stage.value, "pipeline": self.config.pipeline.for_stage(stage).model_dump(mode="json")}

        def one(entry: ManifestEntry) -> tuple[str, FeatureSequence, bool]:
            if policy == CachePolicy.USE:
                cached = self.cache.lookup(entry.track_id, stage.value, stage_hash)
                if cached is not None:
                    return entry.track_id, cached, True
            sequence = pipeline.extract_stage(self.load_clip(entry), stage)
            if policy != CachePolicy.OFF:
                self.cache.store(entry.track_id, sequence, cfg, stage_hash)
            return entry.track_id, sequence, False

        if self.config.jobs > 1:
            with ThreadPoolExecutor(max_workers=self.config.jobs) as executor:
                results = list(executor.map(one, entries))
        else:
            results = [one(entry) for entry in entries]

        hits = sum(1 for _, _, hit in results if hit)
        self.log.info(
            f"stage '{stage.value}': {len(results)} tracks, {hits} cache hits, {len(results) - hits} computed"
            f" (hash={stage_hash[:12]}, policy={policy.value})"
        )
        return {track_id: sequence for track_id, sequence, _ in results}
