from typing import List, Sequence

from .extract_controller import ExtractController
from app.core.classifier.evaluation import evaluate, format_table
from app.dal.report_dal import ReportDAL
from app.models.schemas.experiment_schema import ExperimentConfig
from app.models.schemas.report_schema import EvalReport
from app.utils.enum import Stage
from app.utils.logger import eval_logger


def report_name(stage: Stage) -> str:
    return Stage(stage).value.replace("+", "_")


class EvalController(ExtractController):
    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.log = eval_logger
        self.report_dal = ReportDAL(self.output_dir / "reports")

    def evaluate_stages(self, stages: Sequence[Stage]) -> List[EvalReport]:
        """Train and test one classifier per stage on the same split; write per-stage reports and a summary table."""
        train, test = self.split()
        reports = []
        for stage in stages:
            stage = Stage(stage)
            features = self.extract(stage, train.entries + test.entries)
            report = evaluate(
                train,
                test,
                lambda entry: features[entry.track_id].rows,
                stage,
                self.config.classifier,
                self.config.split_seed,
                self.stage_hash(stage),
                seed=self.config.split_seed,
            )
            name = report_name(stage)
            self.report_dal.write_json(report, f"{name}.json")
            self.report_dal.write_frame_predictions(report, f"{name}.frames.csv")
            self.report_dal.write_text(format_table([report]), f"{name}.txt")
            reports.append(report)

        table = format_table(reports)
        self.report_dal.write_text(table, "summary.txt")
        self.log.info("\n" + table)
        return reports
