from pathlib import Path
from typing import Tuple

import numpy as np
import soundfile as sf

from app.core.audio.transforms import resample_linear
from app.core.exceptions import AudioLoadError, DatasetError, FramingError, UserInputError
from app.models.entities.audio_clip import AudioClip
from app.models.entities.manifest import DatasetManifest
from app.utils.conversion import ms_to_samples
from app.utils.logger import io_logger

SUPPORTED_CONTAINERS = {"WAV", "WAVEX"}
SUPPORTED_SUBTYPES = {"PCM_U8", "PCM_S8", "PCM_16", "PCM_24", "FLOAT"}


def load_audio(path: str | Path) -> AudioClip:
    """Read a PCM WAV file, average channels to mono, scale to [-1, 1]."""
    file_path = Path(path)
    if not file_path.is_file():
        raise AudioLoadError(file_path, "file not found")

    try:
        info = sf.info(str(file_path))
    except RuntimeError as e:
        raise AudioLoadError(file_path, f"malformed header ({e})") from e

    if info.format not in SUPPORTED_CONTAINERS:
        raise AudioLoadError(file_path, f"unsupported container {info.format}")
    if info.subtype not in SUPPORTED_SUBTYPES:
        raise AudioLoadError(file_path, f"unsupported encoding {info.subtype}")

    try:
        data, sample_rate = sf.read(str(file_path), dtype="float64", always_2d=True)
    except RuntimeError as e:
        raise AudioLoadError(file_path, f"unreadable sample data ({e})") from e

    if data.shape[0] == 0:
        raise AudioLoadError(file_path, "no samples")
    return AudioClip(samples=data.mean(axis=1), sample_rate=int(sample_rate))


def write_audio(path: str | Path, clip: AudioClip, subtype: str = "PCM_16") -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    sf.write(str(file_path), clip.samples, clip.sample_rate, subtype=subtype, format="WAV")
    return file_path


def conform_sample_rate(clip: AudioClip, sample_rate: int, resample: bool = False) -> AudioClip:
    """Return the clip at `sample_rate`; mismatched rates are an error unless resampling is allowed."""
    if clip.sample_rate == sample_rate:
        return clip
    if not resample:
        raise UserInputError(f"clip sample rate {clip.sample_rate} Hz differs from the configured {sample_rate} Hz")
    io_logger.debug(f"resampling {clip.sample_rate} Hz -> {sample_rate} Hz")
    return AudioClip(samples=resample_linear(clip.samples, clip.sample_rate, sample_rate), sample_rate=sample_rate)


def frame_signal(clip: AudioClip, window_len: float, hop: float) -> np.ndarray:
    """Fixed-length windows (rows) starting at multiples of the hop; the trailing partial window is dropped.

    `window_len` and `hop` are durations in milliseconds.
    """
    if window_len <= 0 or hop <= 0:
        raise FramingError(f"window and hop must be positive, got {window_len} ms / {hop} ms")
    window_samples = ms_to_samples(window_len, clip.sample_rate)
    hop_samples = ms_to_samples(hop, clip.sample_rate)
    if window_samples < 1 or hop_samples < 1:
        raise FramingError(f"window {window_len} ms / hop {hop} ms is shorter than one sample")
    if len(clip) < window_samples:
        raise FramingError(f"clip of {len(clip)} samples is shorter than one {window_samples}-sample window")

    windows = np.lib.stride_tricks.sliding_window_view(clip.samples, window_samples)[::hop_samples]
    return np.array(windows, copy=True)


def frame_count(n_samples: int, window_samples: int, hop_samples: int) -> int:
    if n_samples < window_samples:
        return 0
    return (n_samples - window_samples) // hop_samples + 1


def split_dataset(
    manifest: DatasetManifest, train_fraction: float, seed: int
) -> Tuple[DatasetManifest, DatasetManifest]:
    """Per-class stratified random split, deterministic for a given seed."""
    if not 0.0 < train_fraction < 1.0:
        raise DatasetError(f"train_fraction must lie in (0, 1), got {train_fraction}")

    rng = np.random.default_rng(seed)
    train, test = [], []
    for label, members in enumerate(manifest.by_class()):
        if len(members) < 2:
            raise DatasetError(f"class '{manifest.class_names[label]}' has {len(members)} track(s); need at least 2")
        members = sorted(members, key=lambda entry: entry.track_id)
        order = rng.permutation(len(members))
        n_train = min(max(int(round(train_fraction * len(members))), 1), len(members) - 1)
        train.extend(members[i] for i in order[:n_train])
        test.extend(members[i] for i in order[n_train:])

    def as_manifest(entries) -> DatasetManifest:
        return DatasetManifest(
            entries=tuple(sorted(entries, key=lambda entry: entry.track_id)),
            class_names=manifest.class_names,
            split_seed=seed,
        )

    return as_manifest(train), as_manifest(test)
