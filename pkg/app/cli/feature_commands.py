import argparse

from app.cli.common import add_common_arguments, load_config, resolve_stages
from app.controllers.eval_controller import EvalController
from app.controllers.extract_controller import ExtractController
from app.core.decorators import log_and_return_exit_code
from app.utils.enum import Stage
from app.utils.logger import cli_logger


def register(subparsers) -> None:
    extract_parser = subparsers.add_parser("extract", help="compute (or reuse cached) features for every track")
    add_common_arguments(extract_parser, with_stage=True)
    extract_parser.set_defaults(handler=extract)

    eval_parser = subparsers.add_parser("eval", help="train, test and report one classifier per stage")
    add_common_arguments(eval_parser, with_stage=True)
    eval_parser.set_defaults(handler=evaluate)


@log_and_return_exit_code(cli_logger)
def extract(args: argparse.Namespace) -> int:
    config = load_config(args)
    controller = ExtractController(config)
    for stage in resolve_stages(args.stage, [config.pipeline.stage]):
        features = controller.extract(stage)
        rows = sum(len(sequence) for sequence in features.values())
        cli_logger.info(f"{stage.value}: {len(features)} tracks, {rows} rows")
    return 0


@log_and_return_exit_code(cli_logger)
def evaluate(args: argparse.Namespace) -> int:
    """Reports go to `<out>/reports/`: one JSON, text and frame CSV per stage plus summary.txt"""
    config = load_config(args)
    stages = resolve_stages(args.stage, [Stage.MFCC] + Stage.invariant_stages())
    EvalController(config).evaluate_stages(stages)
    return 0
