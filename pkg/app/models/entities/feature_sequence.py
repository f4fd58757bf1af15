from dataclasses import dataclass

import numpy as np

from app.core.exceptions import EmptyInputError
from app.models.entities._arrays import frozen_array


@dataclass(frozen=True, eq=False)
class FeatureSequence:
    """Ordered per-frame (or per pooled position) feature rows produced by one pipeline stage."""

    rows: np.ndarray
    stage_tag: str

    def __post_init__(self):
        rows = frozen_array(self.rows)
        if rows.ndim != 2:
            raise EmptyInputError(f"feature rows must be a 2-d array, got shape {rows.shape}")
        if rows.shape[0] < 1:
            raise EmptyInputError(f"'{self.stage_tag}' sequence has no rows")
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    @property
    def dim(self) -> int:
        return int(self.rows.shape[1])
