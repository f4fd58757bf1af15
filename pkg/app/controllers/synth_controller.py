import json
from pathlib import Path

from .base_controller import BaseController
from app.core.audio.signal_io import write_audio
from app.core.audio.synthetic import class_name, render_track, track_id
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.schemas.experiment_schema import ExperimentConfig
from app.utils.conversion import config_hash
from app.utils.logger import io_logger


class SynthController(BaseController):
    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.log = io_logger

    def synthesize(self) -> Path:
        """
        Render C classes x T tracks as 16-bit WAV under `<out>/audio/<class>/<track_id>.wav`,
        plus `<out>/manifest.csv` and `<out>/synth.json` (settings, hash and per-track jitter).

        Return:
            Path: the manifest path
        """
        settings = self.config.synth
        entries, jitters = [], {}
        for c in range(settings.n_classes):
            for i in range(settings.tracks_per_class):
                clip, jitter = render_track(c, i, settings)
                tid = track_id(c, i)
                path = write_audio(self.output_dir / "audio" / class_name(c) / f"{tid}.wav", clip)
                entries.append(ManifestEntry(track_id=tid, path=str(path), label=c))
                jitters[tid] = {"epsilon": jitter.epsilon, "semitones": jitter.semitones}

        manifest = DatasetManifest(
            entries=tuple(entries),
            class_names=tuple(class_name(c) for c in range(settings.n_classes)),
            split_seed=self.config.split_seed,
        )
        manifest_path = self.manifest_dal.write(manifest, self.output_dir / "manifest.csv")
        metadata = {
            "settings": settings.model_dump(mode="json"),
            "config_hash": config_hash("synth", settings),
            "tracks": jitters,
        }
        self.manifest_dal.write_text_atomic(
            self.output_dir / "synth.json", json.dumps(metadata, indent=2, sort_keys=True) + "\n"
        )
        self.log.info(f"wrote {len(entries)} tracks and {manifest_path}")
        return manifest_path
