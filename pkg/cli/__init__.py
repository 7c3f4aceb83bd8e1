"""Command-line surface of parcat."""
from cli.commands import COMMANDS, build_parser, run

__all__ = ["COMMANDS", "build_parser", "run"]
