import csv
import io
import json
from pathlib import Path

from pydantic import BaseModel

from app.core.decorators import decorateAllFunctionInClass, log_and_raise_error
from app.dal.base_dal import BaseDAL
from app.models.schemas.report_schema import EvalReport
from app.utils.logger import io_logger


@decorateAllFunctionInClass(log_and_raise_error(io_logger))
class ReportDAL(BaseDAL):
    def write_json(self, model: BaseModel, path: str | Path) -> Path:
        payload = model.model_dump(mode="json", by_alias=True)
        return self.write_text_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def write_text(self, text: str, path: str | Path) -> Path:
        return self.write_text_atomic(path, text if text.endswith("\n") else text + "\n")

    def write_frame_predictions(self, report: EvalReport, path: str | Path) -> Path:
        """Raw per-frame log `track_id,frame_index,predicted,true` (class indices)"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["track_id", "frame_index", "predicted", "true"])
        for row in report.frame_predictions:
            writer.writerow([row.track_id, row.frame_index, row.predicted, row.true])
        return self.write_text_atomic(path, buffer.getvalue())
