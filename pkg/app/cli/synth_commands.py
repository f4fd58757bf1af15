import argparse

from app.cli.common import add_common_arguments, load_config
from app.controllers.synth_controller import SynthController
from app.core.decorators import log_and_return_exit_code
from app.utils.logger import cli_logger


def register(subparsers) -> None:
    parser = subparsers.add_parser("synth", help="generate the synthetic stand-in corpus and its manifest")
    add_common_arguments(parser)
    parser.set_defaults(handler=synth)


@log_and_return_exit_code(cli_logger)
def synth(args: argparse.Namespace) -> int:
    manifest_path = SynthController(load_config(args)).synthesize()
    cli_logger.info(f"manifest: {manifest_path}")
    return 0
