import math
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.enum import TransformKind


class TransformSpec(BaseModel):
    """A transformation family and the sampled parameters g of its (partially observed) group."""

    model_config = ConfigDict(frozen=True)

    kind: TransformKind
    parameters: List[float] = Field(min_length=1, description="Warp epsilons, or integer shifts in samples / bins")

    @model_validator(mode="after")
    def check_parameters(self):
        if len(set(self.parameters)) != len(self.parameters):
            raise ValueError("transform parameters must be distinct")
        for value in self.parameters:
            if not math.isfinite(value):
                raise ValueError(f"non-finite transform parameter {value}")
            if self.kind == TransformKind.TIME_WARP and value <= -1.0:
                raise ValueError(f"time-warp epsilon must be > -1, got {value}")
            if self.kind != TransformKind.TIME_WARP and float(value) != int(value):
                raise ValueError(f"{self.kind} parameters must be integers, got {value}")
        return self

    @property
    def size(self) -> int:
        return len(self.parameters)

    @classmethod
    def time_warp_grid(cls, count: int = 17, span: float = 0.4) -> "TransformSpec":
        """`count` uniform epsilons on [-span, span]; includes 0 for odd counts."""
        grid = [round(float(eps), 12) + 0.0 for eps in np.linspace(-span, span, count)]
        return cls(kind=TransformKind.TIME_WARP, parameters=grid)

    @classmethod
    def pitch_grid(cls, max_shift: int = 12, step: int = 2) -> "TransformSpec":
        return cls(kind=TransformKind.PITCH_SHIFT, parameters=list(range(-max_shift, max_shift + 1, step)))

    @classmethod
    def full_cyclic(cls, length: int) -> "TransformSpec":
        return cls(kind=TransformKind.CYCLIC_SHIFT, parameters=list(range(length)))
