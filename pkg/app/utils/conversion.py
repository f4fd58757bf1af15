import hashlib
import json
from typing import Any

import numpy as np
from pydantic import BaseModel


def ms_to_samples(duration_ms: float, sample_rate: int) -> int:
    """Number of samples spanned by a duration, rounded to the nearest sample."""
    return int(round(duration_ms * sample_rate / 1000.0))


def next_pow2(n: int) -> int:
    size = 1
    while size < n:
        size *= 2
    return size


def is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def hz_to_mel(freq):
    """HTK mel scale"""
    return 2595.0 * np.log10(1.0 + np.asarray(freq, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


def canonical_json(payload: Any) -> str:
    """Sorted-key, whitespace-free JSON used for every config hash"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def config_digest(*parts: Any) -> bytes:
    """32-byte SHA-256 digest of the canonical JSON of the given parts"""
    payload = [part.model_dump(mode="json") if isinstance(part, BaseModel) else part for part in parts]
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).digest()


def config_hash(*parts: Any) -> str:
    return config_digest(*parts).hex()
