import pytest
from pydantic import ValidationError

from app.models.schemas.experiment_schema import ClassifierSettings, ExperimentConfig
from app.models.schemas.pipeline_schema import MaxPoolLayerConfig, PipelineConfig, WarpLayerConfig
from app.models.schemas.pooling_schema import PoolingSpec
from app.models.schemas.report_schema import EvalReport
from app.models.schemas.spectrogram_schema import MfccSettings, SpectrogramSettings
from app.models.schemas.transform_schema import TransformSpec
from app.utils.enum import PoolingKind, Stage, TransformKind


class TestSpectrogramSettings:
    def test_defaults(self):
        settings = SpectrogramSettings()
        assert (settings.window_samples, settings.hop_samples) == (8158, 4079)
        assert settings.resolved_fft_size == 16384 and settings.n_fft_bins == 8193
        assert settings.n_output_bins == 512

    def test_default_fft_always_zero_pads(self):
        settings = SpectrogramSettings(sample_rate=8000, window_ms=128.0, hop_ms=64.0)
        assert settings.window_samples == 1024
        assert settings.resolved_fft_size == 2048

    def test_explicit_fft_size_wins(self):
        assert SpectrogramSettings(fft_size=8192 * 4).resolved_fft_size == 32768

    @pytest.mark.parametrize("fft_size", [1000, 4096])
    def test_fft_size_rules(self, fft_size):
        with pytest.raises(ValidationError):
            SpectrogramSettings(fft_size=fft_size)

    def test_mfcc_coefficients_bounded_by_filters(self):
        with pytest.raises(ValidationError):
            MfccSettings(n_filters=10, n_coeffs=10)


class TestTransformSpec:
    def test_distinct(self):
        with pytest.raises(ValidationError):
            TransformSpec(kind=TransformKind.TIME_WARP, parameters=[0.1, 0.1])

    def test_warp_bound(self):
        with pytest.raises(ValidationError):
            TransformSpec(kind=TransformKind.TIME_WARP, parameters=[-1.0])

    def test_integer_shifts(self):
        with pytest.raises(ValidationError):
            TransformSpec(kind=TransformKind.PITCH_SHIFT, parameters=[0.5])

    def test_pitch_grid(self):
        assert TransformSpec.pitch_grid(12, 2).parameters == list(range(-12, 13, 2))


def test_pooling_defaults():
    spec = PoolingSpec(kind=PoolingKind.SIGMOID_CDF)
    assert spec.resolved_delta == pytest.approx(2 / 21)
    assert spec.stat_count == 20
    assert PoolingSpec().stat_count == 3


class TestPipelineConfig:
    def test_flags_must_be_monotone(self):
        with pytest.raises(ValidationError):
            PipelineConfig(warp_layer=WarpLayerConfig(enabled=False))
        with pytest.raises(ValidationError):
            PipelineConfig(maxpool_layer=MaxPoolLayerConfig(enabled=False))

    def test_stage_round_trip(self):
        config = PipelineConfig()
        for stage in Stage.invariant_stages():
            assert config.for_stage(stage).stage == stage

    def test_bank_hash_ignores_enable_flags(self):
        config = PipelineConfig()
        assert config.for_stage(Stage.WARP).warp_bank_hash() == config.warp_bank_hash()
        assert config.for_stage(Stage.BASE).pitch_bank_hash() == config.pitch_bank_hash()

    def test_stage_hashes_differ(self):
        config = PipelineConfig()
        hashes = {config.config_hash(stage) for stage in Stage}
        assert len(hashes) == len(Stage)

    def test_warp_recipe_changes_pitch_hash(self):
        config = PipelineConfig()
        other = config.model_copy(update={"warp_layer": WarpLayerConfig(n_templates=8)})
        assert other.pitch_bank_hash() != config.pitch_bank_hash()

    def test_hashes_follow_training_tracks(self):
        config = PipelineConfig()
        assert config.warp_bank_hash("split a") != config.warp_bank_hash("split b")
        assert config.pitch_bank_hash("split a") != config.pitch_bank_hash("split b")
        assert config.config_hash(Stage.WARP, "split a") != config.config_hash(Stage.WARP, "split b")
        assert config.config_hash(Stage.BASE, "split a") == config.config_hash(Stage.BASE, "split b")

    def test_centering_is_part_of_the_warp_recipe(self):
        config = PipelineConfig()
        other = config.model_copy(update={"warp_layer": WarpLayerConfig(center_frames=False)})
        assert other.warp_bank_hash() != config.warp_bank_hash()


class TestExperimentConfig:
    def test_json_round_trip(self, tmp_path):
        config = ExperimentConfig(classifier=ClassifierSettings(lambda_=3.0), split_seed=5)
        path = tmp_path / "config.json"
        path.write_text(config.dump())
        assert '"lambda": 3.0' in config.dump()
        assert ExperimentConfig.load(path) == config

    def test_overrides(self):
        config = ExperimentConfig().with_overrides(output_dir="elsewhere", jobs=3)
        assert (config.output_dir, config.jobs) == ("elsewhere", 3)

    def test_none_override_clears_optional_field(self):
        config = ExperimentConfig(manifest_path="corpus/manifest.csv", cache_dir="cache")
        cleared = config.with_overrides(manifest_path=None)
        assert cleared.manifest_path is None and cleared.cache_dir == "cache"

    def test_none_override_of_required_field_rejected(self):
        with pytest.raises(ValidationError):
            ExperimentConfig().with_overrides(jobs=None)

    def test_schema_version(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"schema_version": 2})


def test_report_confusion_total_checked():
    with pytest.raises(ValidationError):
        EvalReport(
            stage=Stage.BASE,
            stage_label="Log Spectrogram",
            class_names=["a", "b"],
            frame_error_rate=0.0,
            track_error_rate=0.0,
            confusion=[[1, 0], [0, 1]],
            per_class_accuracy=[1.0, 1.0],
            n_train_tracks=2,
            n_test_tracks=3,
            n_train_frames=2,
            n_test_frames=2,
            feature_dim=1,
            lambda_=1.0,
            split_seed=0,
            config_hash="00",
        )
