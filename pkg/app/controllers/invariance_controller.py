import numpy as np

from .base_controller import BaseController
from app.core.invariance.checks import cyclic_bank, cyclic_deviation, warp_contrast
from app.dal.report_dal import ReportDAL
from app.models.schemas.experiment_schema import ExperimentConfig
from app.models.schemas.pooling_schema import PoolingSpec
from app.models.schemas.report_schema import InvarianceCheck, InvarianceReport
from app.utils.conversion import config_hash
from app.utils.enum import PoolingKind, Stage
from app.utils.logger import pipeline_logger


class InvarianceController(BaseController):
    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.log = pipeline_logger
        self.report_dal = ReportDAL(self.output_dir / "reports")

    def cyclic_checks(self) -> list[InvarianceCheck]:
        """Exact suite on full cyclic orbits for both poolings, plus the truncated-orbit negative control."""
        suite = self.config.invariance
        inputs = np.random.default_rng(suite.seed).standard_normal((suite.n_inputs, suite.dim))
        full = cyclic_bank(suite.dim, suite.n_templates, suite.seed + 1)
        checks = []
        for kind in (PoolingKind.MOMENTS, PoolingKind.SIGMOID_CDF):
            deviation = cyclic_deviation(inputs, full, PoolingSpec(kind=kind))
            checks.append(
                InvarianceCheck(
                    name=f"cyclic-{kind.value.lower()}",
                    passed=deviation <= suite.tolerance,
                    measured=deviation,
                    threshold=suite.tolerance,
                    detail={"n_inputs": suite.n_inputs, "dim": suite.dim, "K": full.K, "M": full.M},
                )
            )

        truncated = cyclic_bank(suite.dim, suite.n_templates, suite.seed + 1, truncated=True)
        deviation = cyclic_deviation(inputs, truncated, PoolingSpec())
        checks.append(
            InvarianceCheck(
                name="truncated-orbit-control",
                passed=deviation > suite.tolerance,
                measured=deviation,
                threshold=suite.tolerance,
                detail={"M": truncated.M, "expect": "violation"},
            )
        )
        return checks

    def warp_check(self) -> InvarianceCheck:
        """Warp contrast of the base layer against layer 2 on (at most max_tracks) test tracks."""
        suite = self.config.invariance
        base = self.config.pipeline.base
        _, test = self.split()
        entries = sorted(test.entries, key=lambda entry: entry.track_id)[: suite.max_tracks]
        clips = [self.load_clip(entry) for entry in entries]
        labels = [entry.label for entry in entries]

        ratios = {}
        per_epsilon = {}
        for stage in (Stage.BASE, Stage.WARP):
            pipeline = self.feature_pipeline(stage)
            contrast = warp_contrast(
                clips,
                labels,
                lambda clip: pipeline.extract(clip).rows,
                suite.epsilons,
                base.window_samples,
                base.hop_samples,
            )
            ratios[stage.value] = contrast.ratio
            per_epsilon[stage.value] = {f"{eps:+g}": value for eps, value in contrast.per_epsilon.items()}

        return InvarianceCheck(
            name="warp-contrast",
            passed=ratios[Stage.WARP.value] < ratios[Stage.BASE.value],
            measured=ratios[Stage.WARP.value],
            threshold=ratios[Stage.BASE.value],
            detail={"n_tracks": len(clips), "ratio": ratios, "per_epsilon": per_epsilon},
        )

    def run(self) -> InvarianceReport:
        checks = self.cyclic_checks()
        if self.config.manifest_path:
            checks.append(self.warp_check())
        else:
            self.log.warning("no manifest configured; skipping the warp contrast suite")

        report = InvarianceReport(
            config_hash=config_hash("invariance", self.config.pipeline.config_hash(), self.config.invariance),
            checks=checks,
        )
        for check in checks:
            verdict = "PASS" if check.passed else "FAIL"
            self.log.info(f"{check.name}: {verdict} measured={check.measured:.3e} threshold={check.threshold:.3e}")
        self.report_dal.write_json(report, "invariance.json")
        return report
