from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from app.core.exceptions import DatasetError
from app.utils.conversion import config_hash


@dataclass(frozen=True)
class ManifestEntry:
    track_id: str
    path: str
    label: int


@dataclass(frozen=True)
class DatasetManifest:
    entries: Tuple[ManifestEntry, ...]
    class_names: Tuple[str, ...]
    split_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "class_names", tuple(self.class_names))
        seen = set()
        for entry in self.entries:
            if entry.track_id in seen:
                raise DatasetError(f"duplicate track_id '{entry.track_id}'")
            seen.add(entry.track_id)
            if not 0 <= entry.label < len(self.class_names):
                raise DatasetError(f"label {entry.label} of '{entry.track_id}' is not a class index")

    def __iter__(self) -> Iterator[ManifestEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def track_ids(self) -> List[str]:
        return [entry.track_id for entry in self.entries]

    def by_class(self) -> List[List[ManifestEntry]]:
        groups: List[List[ManifestEntry]] = [[] for _ in self.class_names]
        for entry in self.entries:
            groups[entry.label].append(entry)
        return groups

    def sorted(self) -> "DatasetManifest":
        """Same manifest ordered by track_id"""
        return DatasetManifest(
            entries=tuple(sorted(self.entries, key=lambda entry: entry.track_id)),
            class_names=self.class_names,
            split_seed=self.split_seed,
        )

    def fingerprint(self) -> str:
        """Hash of the (track_id, label) pairs, independent of entry order and file locations."""
        return config_hash("track-set", sorted([entry.track_id, entry.label] for entry in self.entries))
