import argparse
from typing import Sequence

from app.cli import bank_commands, feature_commands, invariance_commands, synth_commands
from version import get_version


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbit-audio", description="Invariant audio signatures from transformed-template orbits"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (bank_commands, feature_commands, synth_commands, invariance_commands):
        module.register(subparsers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)
