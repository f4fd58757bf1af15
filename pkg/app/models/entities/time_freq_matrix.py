from dataclasses import dataclass

import numpy as np

from app.core.exceptions import UserInputError
from app.models.entities._arrays import frozen_array


@dataclass(frozen=True, eq=False)
class TimeFreqMatrix:
    """Log-magnitude spectrogram block, frames x frequency bins."""

    values: np.ndarray
    bin_freqs: np.ndarray
    frame_times: np.ndarray

    def __post_init__(self):
        values = frozen_array(self.values, ndim=2)
        bin_freqs = frozen_array(self.bin_freqs, ndim=1)
        frame_times = frozen_array(self.frame_times, ndim=1)
        if not np.all(np.isfinite(values)):
            raise UserInputError("time-frequency matrix contains non-finite values")
        if values.shape != (frame_times.size, bin_freqs.size):
            raise UserInputError(
                f"matrix shape {values.shape} disagrees with {frame_times.size} frames x {bin_freqs.size} bins"
            )
        if np.any(np.diff(bin_freqs) <= 0):
            raise UserInputError("bins must be ordered by increasing frequency")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "bin_freqs", bin_freqs)
        object.__setattr__(self, "frame_times", frame_times)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class MfccVector:
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", frozen_array(self.coeffs, ndim=1))

    def __len__(self) -> int:
        return int(self.coeffs.size)
