from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.enum import PoolingKind


class PoolingSpec(BaseModel):
    """Complex-cell nonlinearity: raw moments or a sigmoid family approximating CDF bins."""

    model_config = ConfigDict(frozen=True)

    kind: PoolingKind = PoolingKind.MOMENTS
    orders: List[int] = Field(default=[1, 2, 3], description="Moment orders (Moments)")
    n_bins: int = Field(default=20, description="Bin count N (SigmoidCdf)")
    delta: float | None = Field(default=None, description="Bin step; 2/(N+1) when unset")
    beta: float = Field(default=20.0, description="Sigmoid slope")
    shift: float = Field(
        default=-1.0, description="Added to projections before the sigmoid; -1 places thresholds 1-n*delta in [-1, 1]"
    )

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind == PoolingKind.MOMENTS:
            if not self.orders or any(order < 1 for order in self.orders):
                raise ValueError("moment orders must be non-empty and each >= 1")
        else:
            if self.n_bins < 1:
                raise ValueError("n_bins must be >= 1")
            if self.resolved_delta <= 0:
                raise ValueError("delta must be > 0")
            if self.beta <= 0:
                raise ValueError("beta must be > 0")
        return self

    @property
    def resolved_delta(self) -> float:
        return self.delta if self.delta is not None else 2.0 / (self.n_bins + 1)

    @property
    def stat_count(self) -> int:
        """Statistics per template (N in the N*K signature length)"""
        return len(self.orders) if self.kind == PoolingKind.MOMENTS else self.n_bins
