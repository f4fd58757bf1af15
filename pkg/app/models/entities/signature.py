from dataclasses import dataclass

import numpy as np

from app.models.entities._arrays import frozen_array


@dataclass(frozen=True, eq=False)
class Signature:
    """Concatenated pooled statistics; layout[i] = (template_id, statistic index) of values[i]."""

    values: np.ndarray
    layout: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", frozen_array(self.values, ndim=1))
        layout = np.array(self.layout, dtype=np.int64, copy=True)
        if layout.shape != (self.values.size, 2):
            raise ValueError(f"layout shape {layout.shape} does not match {self.values.size} values")
        layout.setflags(write=False)
        object.__setattr__(self, "layout", layout)

    def __len__(self) -> int:
        return int(self.values.size)
