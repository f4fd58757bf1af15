import json
import struct
from pathlib import Path
from typing import Any, Dict, Tuple

import numpy as np

from app.core.exceptions import FeatureCacheError
from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error
from app.dal.base_dal import BaseDAL
from app.utils.logger import io_logger
from app.models.entities.feature_sequence import FeatureSequence

MAGIC = b"TFM1"
_SHAPE = struct.Struct("<QQ")


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class FeatureDAL(BaseDAL):
    """
    TFM container: b"TFM1" | rows, cols as u64 LE | row-major float64 LE values,
    plus a UTF-8 JSON sidecar `<file>.json` holding the producing config and its hash.
    """

    @staticmethod
    def sidecar_path(path: Path) -> Path:
        return path.with_name(path.name + ".json")

    def write_matrix(self, path: str | Path, values: np.ndarray, sidecar: Dict[str, Any]) -> Path:
        values = np.ascontiguousarray(values, dtype="<f8")
        if values.ndim != 2:
            raise FeatureCacheError(f"TFM container holds 2-d matrices, got shape {values.shape}")
        target = self.write_bytes_atomic(path, MAGIC + _SHAPE.pack(*values.shape) + values.tobytes())
        self.write_text_atomic(self.sidecar_path(target), json.dumps(sidecar, indent=2, sort_keys=True))
        return target

    def read_matrix(self, path: str | Path) -> Tuple[np.ndarray, Dict[str, Any]]:
        source = self.resolve(path)
        if not source.is_file():
            raise FeatureCacheError(f"feature file {source} does not exist")
        payload = source.read_bytes()
        header = len(MAGIC) + _SHAPE.size
        if len(payload) < header or payload[: len(MAGIC)] != MAGIC:
            raise FeatureCacheError(f"{source} is not a TFM1 container")
        rows, cols = _SHAPE.unpack_from(payload, len(MAGIC))
        if len(payload) != header + rows * cols * 8:
            raise FeatureCacheError(f"{source} is truncated")
        values = np.frombuffer(payload, dtype="<f8", offset=header).reshape(rows, cols).astype(np.float64)

        sidecar_file = self.sidecar_path(source)
        try:
            sidecar = json.loads(sidecar_file.read_text(encoding="utf-8")) if sidecar_file.is_file() else {}
        except ValueError as e:
            raise FeatureCacheError(f"unreadable sidecar {sidecar_file}: {e}") from e
        return values, sidecar


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class FeatureCache(FeatureDAL):
    """Per-track feature files `<track_id>.<stage_tag>.tfm`, valid only while the sidecar hash matches."""

    def path_for(self, track_id: str, stage_tag: str) -> Path:
        return self.resolve(f"{track_id}.{stage_tag}.tfm")

    def lookup(self, track_id: str, stage_tag: str, config_hash: str) -> FeatureSequence | None:
        path = self.path_for(track_id, stage_tag)
        if not path.is_file():
            return None
        try:
            values, sidecar = self.read_matrix(path)
        except FeatureCacheError as e:
            self.log.warning(f"ignoring unreadable cache file {path}: {e}")
            return None
        if sidecar.get("config_hash") != config_hash:
            return None
        self.log.debug(f"cache hit {path} mtime={path.stat().st_mtime:.0f} hash={config_hash[:12]}")
        return FeatureSequence(rows=values, stage_tag=stage_tag)

    def store(self, track_id: str, sequence: FeatureSequence, cfg: Dict[str, Any], config_hash: str) -> Path:
        sidecar = {"track_id": track_id, "stage_tag": sequence.stage_tag, "cfg": cfg, "config_hash": config_hash}
        return self.write_matrix(self.path_for(track_id, sequence.stage_tag), sequence.rows, sidecar)
