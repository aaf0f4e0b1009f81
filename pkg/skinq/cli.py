import argparse
import sys
from typing import List, Optional

from .commands import COMMAND_REGISTRY, load_builtin_commands
from .errors import SkinError
from .log import configure_logging, get_logger

__version__ = "0.1.0"

logger = get_logger(__name__)

EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skinq",
        description="skinq - surface impedance of a plasma half-space "
        "with partially specular electron reflection",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--list",
        action="store_true",
        help="List available commands and exit",
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Log grid sizes, condition numbers and refinements to stderr",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")

    load_builtin_commands()
    for command_name, command in COMMAND_REGISTRY.items():
        sub = subparsers.add_parser(
            command_name,
            help=command.help,
            description=command.description or command.help,
        )
        command.configure_parser(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(argv) if argv is not None else sys.argv[1:]
    parser = build_parser()
    if not argv:
        parser.print_help()
        return 0
    args = parser.parse_args(argv)
    configure_logging(verbose=args.verbose)

    if args.list:
        print("Available commands:")
        for name in sorted(COMMAND_REGISTRY.keys()):
            print(f"  {name}")
        return 0

    cmd_name: Optional[str] = args.command
    command = COMMAND_REGISTRY.get(cmd_name) if cmd_name else None
    if command is None:
        parser.print_help()
        return 0

    try:
        return command.run(args)
    except KeyboardInterrupt:
        print("Interrupted")
        return EXIT_INTERRUPTED
    except SkinError as e:
        # commands report their own errors; this catches the rest
        logger.debug("unhandled error in %s", cmd_name, exc_info=True)
        print(f"Error: {e}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
