import argparse

from app.cli.common import add_common_arguments, load_config
from app.controllers.invariance_controller import InvarianceController
from app.core.decorators import log_and_return_exit_code
from app.utils.enum import ExitCode
from app.utils.logger import cli_logger


def register(subparsers) -> None:
    parser = subparsers.add_parser("invariance-test", help="run the exact cyclic and warp contrast suites")
    add_common_arguments(parser)
    parser.set_defaults(handler=invariance_test)


@log_and_return_exit_code(cli_logger)
def invariance_test(args: argparse.Namespace) -> int:
    """Exit 1 when any check fails"""
    report = InvarianceController(load_config(args)).run()
    return int(ExitCode.SUCCESS if report.passed else ExitCode.USER_ERROR)
