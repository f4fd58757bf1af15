import os
import tempfile
from pathlib import Path

from app.core.decorators import log_and_raise_error, decorateAllFunctionInClass
from app.utils.logger import io_logger


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class BaseDAL:
    """
    Base file-access class. Subclasses own one on-disk format each.
    Writes go through a temp file + rename so a reader never sees a half-written file.
    """

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        self.log = io_logger

    def resolve(self, path: str | Path) -> Path:
        path = Path(path)
        if self.root is not None and not path.is_absolute():
            return self.root / path
        return path

    def write_bytes_atomic(self, path: str | Path, payload: bytes) -> Path:
        target = self.resolve(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
            os.replace(tmp_name, target)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return target

    def write_text_atomic(self, path: str | Path, text: str) -> Path:
        return self.write_bytes_atomic(path, text.encode("utf-8"))
