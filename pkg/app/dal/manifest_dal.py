import csv
import io
from pathlib import Path

from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error
from app.core.exceptions import DatasetError
from app.dal.base_dal import BaseDAL
from app.models.entities.manifest import DatasetManifest, ManifestEntry
from app.utils.logger import io_logger

HEADER = ["track_id", "path", "label"]


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class ManifestDAL(BaseDAL):
    """UTF-8 CSV `track_id,path,label`; relative paths resolve against the manifest's directory."""

    def read(self, path: str | Path, split_seed: int = 0) -> DatasetManifest:
        source = self.resolve(path)
        if not source.is_file():
            raise DatasetError(f"manifest {source} does not exist")

        with source.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [column.strip() for column in header] != HEADER:
                raise DatasetError(f"manifest {source} must start with header {','.join(HEADER)}")
            rows = [row for row in reader if row and any(cell.strip() for cell in row)]

        for line_no, row in enumerate(rows, start=2):
            if len(row) != 3:
                raise DatasetError(f"manifest {source}:{line_no}: expected 3 columns, got {len(row)}")
        if not rows:
            raise DatasetError(f"manifest {source} lists no tracks")

        class_names = sorted({row[2].strip() for row in rows})
        label_index = {name: index for index, name in enumerate(class_names)}
        entries = []
        for track_id, track_path, label in rows:
            resolved = Path(track_path.strip())
            if not resolved.is_absolute():
                resolved = source.parent / resolved
            entries.append(ManifestEntry(track_id.strip(), str(resolved), label_index[label.strip()]))
        return DatasetManifest(entries=tuple(entries), class_names=tuple(class_names), split_seed=split_seed)

    def write(self, manifest: DatasetManifest, path: str | Path) -> Path:
        target = self.resolve(path)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(HEADER)
        for entry in manifest.entries:
            track_path = Path(entry.path)
            try:
                track_path = track_path.relative_to(target.parent)
            except ValueError:
                pass
            writer.writerow([entry.track_id, track_path.as_posix(), manifest.class_names[entry.label]])
        return self.write_text_atomic(target, buffer.getvalue())
