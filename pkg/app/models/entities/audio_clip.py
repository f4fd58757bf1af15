from dataclasses import dataclass

import numpy as np

from app.core.exceptions import EmptyInputError, UserInputError
from app.models.entities._arrays import frozen_array


@dataclass(frozen=True, eq=False)
class AudioClip:
    """Mono waveform scaled to [-1, 1]"""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = frozen_array(self.samples, ndim=1)
        if samples.size == 0:
            raise EmptyInputError("audio clip has no samples")
        if not np.all(np.isfinite(samples)):
            raise UserInputError("audio clip contains non-finite samples")
        if self.sample_rate <= 0:
            raise UserInputError(f"sample rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "samples", samples)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def __len__(self) -> int:
        return int(self.samples.size)
