import numpy as np


def frozen_array(values, ndim: int | None = None) -> np.ndarray:
    """float64 read-only copy"""
    array = np.array(values, dtype=np.float64, copy=True)
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {array.shape}")
    array.setflags(write=False)
    return array
