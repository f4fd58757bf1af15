from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from app.core.exceptions import BankCorruptionError
from app.models.entities._arrays import frozen_array
from app.models.schemas.transform_schema import TransformSpec

NORM_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class RawTemplate:
    """A training vector drawn as a template, before its orbit is generated."""

    source_track: str
    position: int
    vector: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vector", frozen_array(self.vector))


@dataclass(frozen=True, eq=False)
class TemplateOrbit:
    """The M stored, unit-norm transformed versions g*t of one template."""

    template_id: int
    source_track: str
    members: np.ndarray
    spec: TransformSpec

    def __post_init__(self):
        members = frozen_array(self.members, ndim=2)
        if members.shape[0] != self.spec.size:
            raise BankCorruptionError(
                f"template {self.template_id}: {members.shape[0]} members for {self.spec.size} parameters"
            )
        if not np.all(np.isfinite(members)):
            raise BankCorruptionError(f"template {self.template_id}: members contain non-finite values")
        norms = np.linalg.norm(members, axis=1)
        if not np.all(np.abs(norms - 1.0) <= NORM_TOLERANCE):
            raise BankCorruptionError(f"template {self.template_id}: members are not unit-norm")
        object.__setattr__(self, "members", members)

    @property
    def size(self) -> int:
        return int(self.members.shape[0])

    @property
    def dim(self) -> int:
        return int(self.members.shape[1])


@dataclass(frozen=True)
class TemplateBank:
    orbits: Tuple[TemplateOrbit, ...]
    layer_tag: str
    config_hash: str
    _stacked: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        orbits = tuple(self.orbits)
        if not orbits:
            raise BankCorruptionError("template bank has no orbits")
        first = orbits[0]
        if len({orbit.template_id for orbit in orbits}) != len(orbits):
            raise BankCorruptionError("template ids are not unique")
        for orbit in orbits:
            if orbit.dim != first.dim or orbit.size != first.size:
                raise BankCorruptionError(f"template {orbit.template_id} has a different shape than the bank")
            if orbit.spec.kind != first.spec.kind:
                raise BankCorruptionError(f"template {orbit.template_id} mixes transform kinds")
        object.__setattr__(self, "orbits", orbits)
        stacked = np.stack([orbit.members for orbit in orbits])
        stacked.setflags(write=False)
        object.__setattr__(self, "_stacked", stacked)

    @property
    def K(self) -> int:
        return len(self.orbits)

    @property
    def M(self) -> int:
        return self.orbits[0].size

    @property
    def dim(self) -> int:
        return self.orbits[0].dim

    @property
    def spec(self) -> TransformSpec:
        return self.orbits[0].spec

    @property
    def members(self) -> np.ndarray:
        """K x M x d read-only member tensor"""
        return self._stacked

    def __eq__(self, other) -> bool:
        if not isinstance(other, TemplateBank):
            return NotImplemented
        return (
            self.layer_tag == other.layer_tag
            and self.config_hash == other.config_hash
            and len(self.orbits) == len(other.orbits)
            and all(
                a.template_id == b.template_id
                and a.source_track == b.source_track
                and a.spec == b.spec
                and np.array_equal(a.members, b.members)
                for a, b in zip(self.orbits, other.orbits)
            )
        )
