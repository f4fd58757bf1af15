from dataclasses import dataclass

import numpy as np

from app.models.entities._arrays import frozen_array


@dataclass(frozen=True, eq=False)
class RidgeModel:
    """One-vs-rest linear least-squares classifier on standardized features.

    `kept` marks the input dimensions that survived standardization (zero-scale dimensions are dropped);
    W has one row per kept dimension.
    """

    W: np.ndarray
    b: np.ndarray
    lambda_: float
    feature_dim: int
    class_count: int
    mean: np.ndarray
    scale: np.ndarray
    kept: np.ndarray

    def __post_init__(self):
        for name in ("W", "b", "mean", "scale"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        kept = np.array(self.kept, dtype=bool, copy=True)
        kept.setflags(write=False)
        object.__setattr__(self, "kept", kept)
        if not (np.all(np.isfinite(self.W)) and np.all(np.isfinite(self.b))):
            raise ValueError("ridge weights must be finite")
        if self.W.shape != (int(kept.sum()), self.class_count) or kept.size != self.feature_dim:
            raise ValueError(f"weight shape {self.W.shape} inconsistent with {self.feature_dim} features")
