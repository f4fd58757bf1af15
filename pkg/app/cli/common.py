import argparse
from typing import List

from app.core.config import CONFIG
from app.core.exceptions import UserInputError
from app.models.schemas.experiment_schema import ExperimentConfig
from app.utils.enum import Stage

ALL_STAGES = "all"


def add_common_arguments(parser: argparse.ArgumentParser, with_stage: bool = False) -> None:
    parser.add_argument("--config", help="UTF-8 JSON experiment config (schema_version 1)")
    parser.add_argument("--seed", type=int, help=f"split / generator seed (default {CONFIG.DEFAULT_SEED})")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="worker threads across tracks")
    if with_stage:
        choices = [stage.value for stage in Stage] + [ALL_STAGES]
        parser.add_argument("--stage", choices=choices, help="feature stage, or 'all' for every ablation stage")


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (or defaults) with the command-line flags applied on top."""
    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig(split_seed=CONFIG.DEFAULT_SEED)
    flags = {"output_dir": args.out, "jobs": args.jobs}
    overrides = {key: value for key, value in flags.items() if value is not None}
    if args.seed is not None:
        if args.seed < 0:
            raise UserInputError(f"--seed must be non-negative, got {args.seed}")
        overrides["split_seed"] = args.seed
        overrides["synth"] = config.synth.model_copy(update={"seed": args.seed}).model_dump(mode="json")
    return config.with_overrides(**overrides)


def resolve_stages(value: str | None, default: List[Stage]) -> List[Stage]:
    if value is None:
        return default
    if value == ALL_STAGES:
        return [Stage.MFCC] + Stage.invariant_stages()
    return [Stage(value)]
