"""
Desk-scale stand-in corpus. Each class is a harmonic stack with its own fundamental, timbre and
rhythm envelope; each track applies a random time warp x[(1+eps) n] (rendered analytically), a
random pitch offset and additive white noise.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.models.entities.audio_clip import AudioClip
from app.models.schemas.experiment_schema import SynthSettings

BASE_F0_HZ = 110.0
F0_SPAN_OCTAVES = 2.0
PEAK_LEVEL = 0.9


@dataclass(frozen=True)
class ClassProfile:
    f0: float
    amplitudes: np.ndarray
    phases: np.ndarray
    rhythm_hz: float


@dataclass(frozen=True)
class TrackJitter:
    epsilon: float
    semitones: float


def class_profile(class_index: int, settings: SynthSettings) -> ClassProfile:
    rng = np.random.default_rng([settings.seed, class_index, 0])
    harmonics = np.arange(1, settings.n_harmonics + 1)
    return ClassProfile(
        f0=BASE_F0_HZ * 2.0 ** (F0_SPAN_OCTAVES * class_index / settings.n_classes),
        amplitudes=rng.uniform(0.2, 1.0, settings.n_harmonics) / harmonics,
        phases=rng.uniform(0.0, 2.0 * math.pi, settings.n_harmonics),
        rhythm_hz=1.0 + 0.6 * class_index,
    )


def render_track(class_index: int, track_index: int, settings: SynthSettings) -> Tuple[AudioClip, TrackJitter]:
    """Deterministic in (seed, class_index, track_index) regardless of generation order."""
    profile = class_profile(class_index, settings)
    rng = np.random.default_rng([settings.seed, class_index, track_index + 1])
    jitter = TrackJitter(
        epsilon=float(rng.uniform(-settings.warp_jitter, settings.warp_jitter)),
        semitones=float(rng.uniform(-settings.pitch_jitter_semitones, settings.pitch_jitter_semitones)),
    )

    n_samples = int(round(settings.duration_s * settings.sample_rate))
    t = np.arange(n_samples) * (1.0 + jitter.epsilon) / settings.sample_rate
    f0 = profile.f0 * 2.0 ** (jitter.semitones / 12.0)
    nyquist_guard = 0.45 * settings.sample_rate / (1.0 + jitter.epsilon)

    tone = np.zeros(n_samples)
    for h, (amplitude, phase) in enumerate(zip(profile.amplitudes, profile.phases), start=1):
        if f0 * h >= nyquist_guard:
            break
        tone += amplitude * np.sin(2.0 * math.pi * f0 * h * t + phase)
    envelope = 0.2 + 0.8 * (0.5 * (1.0 - np.cos(2.0 * math.pi * profile.rhythm_hz * t))) ** 2
    signal = tone * envelope

    if settings.snr_db is not None:
        noise_power = np.mean(signal**2) / 10.0 ** (settings.snr_db / 10.0)
        signal = signal + rng.standard_normal(n_samples) * math.sqrt(noise_power)

    peak = np.max(np.abs(signal))
    if peak > 0:
        signal = signal * (PEAK_LEVEL / peak)
    return AudioClip(samples=signal, sample_rate=settings.sample_rate), jitter


def class_name(class_index: int) -> str:
    return f"class_{class_index:02d}"


def track_id(class_index: int, track_index: int) -> str:
    return f"{class_name(class_index)}_{track_index:03d}"
