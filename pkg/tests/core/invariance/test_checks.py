import numpy as np

from app.core.invariance.checks import cyclic_bank, cyclic_deviation, valid_frames, warp_contrast
from app.models.entities.audio_clip import AudioClip
from app.models.schemas.pooling_schema import PoolingSpec
from app.utils.enum import PoolingKind


def test_full_orbits_are_exactly_invariant(rng):
    inputs = rng.standard_normal((100, 64))
    bank = cyclic_bank(64, 16, seed=5)
    assert bank.K == 16 and bank.M == 64
    for kind in (PoolingKind.MOMENTS, PoolingKind.SIGMOID_CDF):
        assert cyclic_deviation(inputs, bank, PoolingSpec(kind=kind)) <= 1e-9


def test_truncated_orbits_break_invariance(rng):
    inputs = rng.standard_normal((10, 16))
    bank = cyclic_bank(16, 4, seed=5, truncated=True)
    assert bank.M == 8
    assert cyclic_deviation(inputs, bank, PoolingSpec()) > 1e-3


def test_valid_frames():
    assert valid_frames(1000, 0.0, 100, 50) == 19
    assert valid_frames(1000, 1.0, 100, 50) == 9
    assert valid_frames(1000, -0.2, 100, 50) == 19
    assert valid_frames(50, 0.0, 100, 50) == 1


def test_warp_contrast_of_warp_invariant_features():
    """Features reading only the first sample cannot see a time warp."""
    clips = [AudioClip(samples=np.full(1000, 0.1 * (i + 1)), sample_rate=8000) for i in range(4)]
    contrast = warp_contrast(clips, [0, 0, 1, 1], lambda clip: np.full((5, 2), clip.samples[0]), [-0.1, 0.1], 100, 50)
    assert contrast.ratio == 0.0
    assert set(contrast.per_epsilon) == {-0.1, 0.1}
    assert contrast.inter_class_median > 0


def test_warp_contrast_sees_warp_sensitive_features(rng):
    clips = [AudioClip(samples=rng.standard_normal(1000), sample_rate=8000) for _ in range(4)]
    features = lambda clip: clip.samples[:900].reshape(9, 100)
    contrast = warp_contrast(clips, [0, 0, 1, 1], features, [0.2], 100, 50)
    assert contrast.ratio > 0
