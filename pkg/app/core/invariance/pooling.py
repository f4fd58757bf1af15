"""
Simple/complex-cell module: project an input onto every member of a template orbit, then pool the
projections with a nonlinearity averaged uniformly over the sampled group elements.

Moment pooling: (1/M) sum_m p_m^n. Sigmoid-CDF pooling: (1/M) sum_m sigma(beta (p_m + shift + n delta)).
"""

from typing import Sequence

import numpy as np
from scipy.special import expit

from app.core.exceptions import DimensionMismatchError, EmptyInputError
from app.models.entities.signature import Signature
from app.models.entities.template_orbit import TemplateBank, TemplateOrbit
from app.models.schemas.pooling_schema import PoolingSpec
from app.utils.enum import PoolingKind


def project(x: np.ndarray, orbit: TemplateOrbit) -> np.ndarray:
    """Normalized dot products <x/|x|, member_m> for the M orbit members."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != orbit.dim:
        raise DimensionMismatchError(orbit.dim, x.size, "projection input")
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise EmptyInputError("cannot project a zero vector")
    return orbit.members @ (x / norm)


def pool_moments(projections: np.ndarray, orders: Sequence[int]) -> np.ndarray:
    """Raw moments over the last axis, one output per order."""
    projections = np.asarray(projections, dtype=np.float64)
    if projections.shape[-1] == 0:
        raise EmptyInputError("cannot pool an empty projection vector")
    M = projections.shape[-1]
    return np.stack([np.sum(projections**order, axis=-1) / M for order in orders], axis=-1)


def pool_sigmoid_cdf(
    projections: np.ndarray, n_bins: int, delta: float, beta: float, shift: float = 0.0
) -> np.ndarray:
    """Smoothed fraction of projections above each threshold -n*delta - shift, n = 1..N; non-decreasing in n."""
    projections = np.asarray(projections, dtype=np.float64)
    if projections.shape[-1] == 0:
        raise EmptyInputError("cannot pool an empty projection vector")
    M = projections.shape[-1]
    offsets = delta * np.arange(1, n_bins + 1, dtype=np.float64)
    activations = expit(beta * (projections[..., None, :] + shift + offsets[:, None]))
    return np.sum(activations, axis=-1) / M


def pool(projections: np.ndarray, spec: PoolingSpec) -> np.ndarray:
    if spec.kind == PoolingKind.MOMENTS:
        return pool_moments(projections, spec.orders)
    return pool_sigmoid_cdf(projections, spec.n_bins, spec.resolved_delta, spec.beta, spec.shift)


def signature_layout(bank: TemplateBank, spec: PoolingSpec) -> np.ndarray:
    template_ids = np.repeat([orbit.template_id for orbit in bank.orbits], spec.stat_count)
    stat_index = np.tile(np.arange(spec.stat_count), bank.K)
    return np.column_stack([template_ids, stat_index])


def signature(x: np.ndarray, bank: TemplateBank, spec: PoolingSpec) -> Signature:
    """Concatenation over the K orbits of the pooled projection statistics."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != bank.dim:
        raise DimensionMismatchError(bank.dim, x.size, "signature input")
    values = np.concatenate([pool(project(x, orbit), spec) for orbit in bank.orbits])
    return Signature(values=values, layout=signature_layout(bank, spec))


def signature_rows(rows: np.ndarray, bank: TemplateBank, spec: PoolingSpec) -> np.ndarray:
    """Signature of every row at once, T x (N*K).

    An exactly zero row (digital silence) maps to an all-zero signature instead of an error.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != bank.dim:
        raise DimensionMismatchError(bank.dim, rows.shape[-1], "feature row")

    norms = np.linalg.norm(rows, axis=1)
    silent = norms == 0.0
    unit = rows / np.where(silent, 1.0, norms)[:, None]

    # T x K x M projections
    flat = bank.members.reshape(bank.K * bank.M, bank.dim)
    projections = (unit @ flat.T).reshape(rows.shape[0], bank.K, bank.M)
    pooled = pool(projections, spec).reshape(rows.shape[0], -1)
    pooled[silent] = 0.0
    return pooled
