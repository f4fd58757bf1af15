"""
Measurable invariance properties.

Exact: with orbits enumerating the whole cyclic group, shifting the input only permutes each orbit's
projections, so every pooled statistic is unchanged. A half orbit breaks this (negative control).
Approximate: warp robustness of track descriptors, relative to the typical inter-class distance.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from app.core.audio.signal_io import frame_count
from app.core.audio.transforms import cyclic_shift, time_warp
from app.core.invariance.pooling import signature_rows
from app.core.invariance.template_bank import build_orbit
from app.models.entities.audio_clip import AudioClip
from app.models.entities.template_orbit import TemplateBank
from app.models.schemas.pooling_schema import PoolingSpec
from app.models.schemas.transform_schema import TransformSpec
from app.utils.conversion import config_hash
from app.utils.enum import LayerTag, TransformKind


def cyclic_bank(dim: int, n_templates: int, seed: int, truncated: bool = False) -> TemplateBank:
    """Random templates with full cyclic-shift orbits, or only the first half of the group."""
    rng = np.random.default_rng(seed)
    shifts = list(range(dim // 2)) if truncated else list(range(dim))
    spec = TransformSpec(kind=TransformKind.CYCLIC_SHIFT, parameters=shifts)
    orbits = tuple(
        build_orbit(rng.standard_normal(dim), spec, template_id=k, source_track="random") for k in range(n_templates)
    )
    return TemplateBank(
        orbits=orbits,
        layer_tag=LayerTag.TEST.value,
        config_hash=config_hash("cyclic-bank", dim, n_templates, seed, truncated),
    )


def cyclic_deviation(inputs: np.ndarray, bank: TemplateBank, spec: PoolingSpec) -> float:
    """max over inputs and shifts g of ||signature(x) - signature(gx)||_inf"""
    inputs = np.asarray(inputs, dtype=np.float64)
    reference = signature_rows(inputs, bank, spec)
    worst = 0.0
    for shift in range(1, inputs.shape[1]):
        shifted = np.stack([cyclic_shift(row, shift) for row in inputs])
        worst = max(worst, float(np.max(np.abs(signature_rows(shifted, bank, spec) - reference))))
    return worst


@dataclass(frozen=True)
class WarpContrast:
    """Median warp displacement / median inter-class distance, overall and per epsilon."""

    ratio: float
    per_epsilon: Dict[float, float]
    inter_class_median: float


def valid_frames(n_samples: int, epsilon: float, window_samples: int, hop_samples: int) -> int:
    """Frames whose window lies inside the part of a warped clip still backed by source audio."""
    support = int(np.floor(n_samples / (1.0 + epsilon))) if epsilon > 0 else n_samples
    return max(1, frame_count(support, window_samples, hop_samples))


def warp_contrast(
    clips: Sequence[AudioClip],
    labels: Sequence[int],
    features: Callable[[AudioClip], np.ndarray],
    epsilons: Sequence[float],
    window_samples: int,
    hop_samples: int,
) -> WarpContrast:
    descriptors = []
    displacements: Dict[float, List[float]] = {float(eps): [] for eps in epsilons}
    for clip in clips:
        rows = features(clip)
        descriptors.append(rows.mean(axis=0))
        for eps in epsilons:
            warped_rows = features(AudioClip(samples=time_warp(clip.samples, eps), sample_rate=clip.sample_rate))
            n = min(valid_frames(len(clip), eps, window_samples, hop_samples), rows.shape[0], warped_rows.shape[0])
            displacement = np.linalg.norm(rows[:n].mean(axis=0) - warped_rows[:n].mean(axis=0))
            displacements[float(eps)].append(float(displacement))

    labels = np.asarray(labels)
    descriptors = np.asarray(descriptors)
    pair_distances = []
    any_pair = []
    for i in range(len(descriptors)):
        for j in range(i + 1, len(descriptors)):
            distance = float(np.linalg.norm(descriptors[i] - descriptors[j]))
            any_pair.append(distance)
            if labels[i] != labels[j]:
                pair_distances.append(distance)
    scale = float(np.median(pair_distances or any_pair or [1.0]))
    scale = scale if scale > 0 else 1.0

    per_epsilon = {eps: float(np.median(values)) / scale for eps, values in displacements.items()}
    everything = [value for values in displacements.values() for value in values]
    return WarpContrast(ratio=float(np.median(everything)) / scale, per_epsilon=per_epsilon, inter_class_median=scale)
