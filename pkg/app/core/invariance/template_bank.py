"""
Template sampling and orbit generation.

Templates are drawn from training data only; each orbit stores the unit-normalized transformed copies
g*t (optionally mapped through a representation, e.g. warp raw audio then take its base-layer frame),
so projections <gx, t> can be computed as <x, g^-1 t> without transforming the input.
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from app.core.audio.transforms import apply_transform
from app.core.exceptions import DatasetError, DegenerateTemplateError, TransformError
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.models.entities.template_orbit import RawTemplate, TemplateBank, TemplateOrbit
from app.models.schemas.transform_schema import TransformSpec
from app.utils.logger import bank_logger

MIN_MEMBER_NORM = 1e-12

VectorProvider = Callable[[ManifestEntry], np.ndarray]
Representation = Callable[[np.ndarray], np.ndarray]


def sample_templates(train: DatasetManifest, K: int, provider: VectorProvider, seed: int) -> List[RawTemplate]:
    """Draw K templates: a training track uniformly (with replacement), then one of its vectors uniformly.

    `provider` maps a track to its candidate vectors stacked along axis 0.
    """
    if K < 1:
        raise DatasetError(f"template count must be >= 1, got {K}")
    entries = sorted(train.entries, key=lambda entry: entry.track_id)
    if not entries:
        raise DatasetError("cannot sample templates from an empty training set")

    rng = np.random.default_rng(seed)
    candidates: Dict[str, np.ndarray] = {}
    templates = []
    for _ in range(K):
        entry = entries[int(rng.integers(len(entries)))]
        if entry.track_id not in candidates:
            candidates[entry.track_id] = np.asarray(provider(entry))
        vectors = candidates[entry.track_id]
        if vectors.shape[0] == 0:
            raise DatasetError(f"track '{entry.track_id}' yields no template candidates")
        position = int(rng.integers(vectors.shape[0]))
        templates.append(RawTemplate(source_track=entry.track_id, position=position, vector=vectors[position]))
    return templates


def build_orbit(
    template: np.ndarray,
    spec: TransformSpec,
    representation: Optional[Representation] = None,
    template_id: int = 0,
    source_track: str = "",
    **transform_kwargs,
) -> TemplateOrbit:
    """Transform the template by every spec parameter, map through `representation`, normalize to unit norm."""
    template = np.asarray(template, dtype=np.float64)
    if not np.all(np.isfinite(template)):
        raise TransformError(f"template {template_id} contains non-finite values")
    template_norm = float(np.linalg.norm(template))
    if template_norm < MIN_MEMBER_NORM:
        raise DegenerateTemplateError(None, template_norm)

    members = []
    for parameter in spec.parameters:
        transformed = apply_transform(template, spec.kind, parameter, **transform_kwargs)
        member = np.ravel(representation(transformed) if representation else transformed).astype(np.float64)
        norm = float(np.linalg.norm(member))
        if not np.isfinite(norm) or norm < MIN_MEMBER_NORM:
            raise DegenerateTemplateError(parameter, norm)
        members.append(member / norm)
    return TemplateOrbit(template_id=template_id, source_track=source_track, members=np.stack(members), spec=spec)


def build_bank(
    templates: Sequence[RawTemplate],
    spec: TransformSpec,
    layer_tag: str,
    config_hash: str,
    representation: Optional[Representation] = None,
    jobs: int = 1,
    **transform_kwargs,
) -> TemplateBank:
    """Orbit per template, ids assigned in sampling order."""

    def orbit_for(indexed: tuple[int, RawTemplate]) -> TemplateOrbit:
        template_id, raw = indexed
        return build_orbit(raw.vector, spec, representation, template_id, raw.source_track, **transform_kwargs)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            orbits = list(pool.map(orbit_for, enumerate(templates)))
    else:
        orbits = [orbit_for(item) for item in enumerate(templates)]

    bank = TemplateBank(orbits=tuple(orbits), layer_tag=layer_tag, config_hash=config_hash)
    bank_logger.info(f"{layer_tag} bank built: K={bank.K} M={bank.M} d={bank.dim}")
    return bank


def save_bank(bank: TemplateBank, path: str | Path) -> Path:
    from app.dal.bank_dal import BankDAL

    return BankDAL().save(bank, path)


def load_bank(path: str | Path, expected_hash: str | None = None) -> TemplateBank:
    from app.dal.bank_dal import BankDAL

    return BankDAL().load(path, expected_hash)
