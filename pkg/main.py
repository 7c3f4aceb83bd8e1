"""
parcat - exact computations in the partition category.

Usage: python main.py <command> [options]; `python main.py --help` lists the
commands.
"""
import sys

from cli import run


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
