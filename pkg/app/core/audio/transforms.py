"""
Explicit transformations whose orbits the templates sample.

Time-domain: time warp t[(1+eps)n] and cyclic shift (the exact finite group used for invariance checks).
Frequency-domain: integer translation of log-spectrum bins as the pitch-shift surrogate.
"""

import math
from typing import List

import numpy as np

from app.core.exceptions import EmptyInputError, TransformError
from app.models.schemas.transform_schema import TransformSpec
from app.utils.enum import TransformKind

DEFAULT_LOG_FLOOR = math.log(1e-6)


def time_warp(signal: np.ndarray, epsilon: float) -> np.ndarray:
    """output[n] = signal((1+eps) n), linearly interpolated; positions past the last sample read as 0."""
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim != 1 or signal.size == 0:
        raise EmptyInputError("time_warp needs a non-empty 1-d signal")
    if not math.isfinite(epsilon):
        raise TransformError(f"non-finite warp epsilon {epsilon}")
    if epsilon <= -1.0:
        raise TransformError(f"warp epsilon must be > -1, got {epsilon}")
    if epsilon == 0.0:
        return signal.copy()

    index = np.arange(signal.size, dtype=np.float64)
    return np.interp((1.0 + epsilon) * index, index, signal, left=0.0, right=0.0)


def cyclic_shift(vector: np.ndarray, k: int) -> np.ndarray:
    """output[n] = input[(n - k) mod L]"""
    vector = np.asarray(vector, dtype=np.float64)
    if vector.size == 0:
        return vector.copy()
    return np.roll(vector, int(k) % vector.size)


def pitch_shift_frame(frame: np.ndarray, shift_bins: int, fill_value: float = DEFAULT_LOG_FLOOR) -> np.ndarray:
    """Translate a log-magnitude frame along frequency; vacated bins take `fill_value`.

    A 2-d input is treated as a block of frames and every row is shifted.
    """
    frame = np.asarray(frame, dtype=np.float64)
    n_bins = frame.shape[-1]
    shift = int(shift_bins)
    if abs(shift) >= n_bins:
        raise TransformError(f"pitch shift {shift} out of range for {n_bins} bins")

    out = np.full_like(frame, fill_value)
    if shift > 0:
        out[..., shift:] = frame[..., :-shift]
    elif shift < 0:
        out[..., :shift] = frame[..., -shift:]
    else:
        out[...] = frame
    return out


def apply_transform(signal: np.ndarray, kind: TransformKind, parameter: float, **kwargs) -> np.ndarray:
    if kind == TransformKind.TIME_WARP:
        return time_warp(signal, parameter)
    if kind == TransformKind.CYCLIC_SHIFT:
        return cyclic_shift(signal, int(parameter))
    if kind == TransformKind.PITCH_SHIFT:
        return pitch_shift_frame(signal, int(parameter), **kwargs)
    raise TransformError(f"unknown transform kind {kind}")


def apply_orbit(signal: np.ndarray, spec: TransformSpec, **kwargs) -> List[np.ndarray]:
    """One transformed copy per spec parameter, in parameter order."""
    return [apply_transform(signal, spec.kind, parameter, **kwargs) for parameter in spec.parameters]


def resample_linear(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    """Linear-interpolation resampler; the output covers the same duration."""
    samples = np.asarray(samples, dtype=np.float64)
    if src_rate <= 0 or dst_rate <= 0:
        raise TransformError(f"sample rates must be positive, got {src_rate} -> {dst_rate}")
    if src_rate == dst_rate:
        return samples.copy()
    n_out = max(1, int(round(samples.size * dst_rate / src_rate)))
    positions = np.arange(n_out, dtype=np.float64) * (src_rate / dst_rate)
    return np.interp(positions, np.arange(samples.size, dtype=np.float64), samples)
