import json
import struct
from pathlib import Path

import numpy as np

from app.core.exceptions import BankCorruptionError, ConfigHashMismatchError
from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error
from app.dal.base_dal import BaseDAL
from app.utils.logger import io_logger
from app.models.entities.template_orbit import TemplateBank, TemplateOrbit
from app.models.schemas.transform_schema import TransformSpec
from app.utils.conversion import canonical_json

MAGIC = b"TBK1"
_DIMS = struct.Struct("<QQQ")
_LENGTH = struct.Struct("<Q")
_HASH_BYTES = 32


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class BankDAL(BaseDAL):
    """
    Bank file layout (little-endian):
        b"TBK1" | K, M, d as u64 | u64 length + JSON blob (spec, layer tag, template ids, source tracks)
        | K*M*d float64 members | 32-byte config hash
    """

    def encode(self, bank: TemplateBank) -> bytes:
        meta = canonical_json(
            {
                "spec": bank.spec.model_dump(mode="json"),
                "layer_tag": bank.layer_tag,
                "template_ids": [orbit.template_id for orbit in bank.orbits],
                "source_tracks": [orbit.source_track for orbit in bank.orbits],
            }
        ).encode("utf-8")
        return b"".join(
            [
                MAGIC,
                _DIMS.pack(bank.K, bank.M, bank.dim),
                _LENGTH.pack(len(meta)),
                meta,
                np.ascontiguousarray(bank.members, dtype="<f8").tobytes(),
                bytes.fromhex(bank.config_hash),
            ]
        )

    def decode(self, payload: bytes, source: str = "<bytes>") -> TemplateBank:
        def corrupt(reason: str) -> BankCorruptionError:
            return BankCorruptionError(f"corrupted bank file {source}: {reason}")

        header_size = len(MAGIC) + _DIMS.size + _LENGTH.size
        if len(payload) < header_size:
            raise corrupt(f"truncated header ({len(payload)} bytes)")
        if payload[: len(MAGIC)] != MAGIC:
            raise corrupt("bad magic bytes")
        K, M, d = _DIMS.unpack_from(payload, len(MAGIC))
        (meta_length,) = _LENGTH.unpack_from(payload, len(MAGIC) + _DIMS.size)

        members_offset = header_size + meta_length
        hash_offset = members_offset + K * M * d * 8
        if len(payload) != hash_offset + _HASH_BYTES:
            raise corrupt(f"expected {hash_offset + _HASH_BYTES} bytes, found {len(payload)}")

        try:
            meta = json.loads(payload[header_size:members_offset].decode("utf-8"))
            spec = TransformSpec.model_validate(meta["spec"])
            template_ids = [int(value) for value in meta["template_ids"]]
            source_tracks = [str(value) for value in meta["source_tracks"]]
            layer_tag = str(meta["layer_tag"])
        except (ValueError, KeyError, TypeError) as e:
            raise corrupt(f"unreadable metadata ({e})") from e
        if len(template_ids) != K or len(source_tracks) != K or spec.size != M:
            raise corrupt("metadata disagrees with the K/M header")

        members = np.frombuffer(payload, dtype="<f8", count=K * M * d, offset=members_offset).reshape(K, M, d)
        orbits = tuple(
            TemplateOrbit(template_id=template_ids[k], source_track=source_tracks[k], members=members[k], spec=spec)
            for k in range(K)
        )
        return TemplateBank(orbits=orbits, layer_tag=layer_tag, config_hash=payload[hash_offset:].hex())

    def save(self, bank: TemplateBank, path: str | Path) -> Path:
        target = self.write_bytes_atomic(path, self.encode(bank))
        self.log.info(f"bank '{bank.layer_tag}' saved to {target} (K={bank.K} M={bank.M} d={bank.dim})")
        return target

    def load(self, path: str | Path, expected_hash: str | None = None) -> TemplateBank:
        source = self.resolve(path)
        if not source.is_file():
            raise BankCorruptionError(f"bank file {source} does not exist")
        bank = self.decode(source.read_bytes(), str(source))
        if expected_hash is not None and bank.config_hash != expected_hash:
            raise ConfigHashMismatchError(f"bank {source}", expected_hash, bank.config_hash)
        return bank
