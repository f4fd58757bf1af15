import argparse

from app.cli.common import add_common_arguments, load_config
from app.controllers.bank_controller import BankController
from app.core.decorators import log_and_return_exit_code
from app.utils.logger import cli_logger


def register(subparsers) -> None:
    parser = subparsers.add_parser("build-banks", help="sample templates and store the warp and pitch banks")
    add_common_arguments(parser)
    parser.set_defaults(handler=build_banks)


@log_and_return_exit_code(cli_logger)
def build_banks(args: argparse.Namespace) -> int:
    """Write `<out>/banks/warp.tbk` and `<out>/banks/pitch.tbk`"""
    written = BankController(load_config(args)).build_banks()
    for layer, path in written.items():
        cli_logger.info(f"{layer.value} bank: {path}")
    return 0
