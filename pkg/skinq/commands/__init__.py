import argparse
from dataclasses import dataclass
from typing import Callable, Dict, Optional


@dataclass
class Command:
    name: str
    help: str
    description: Optional[str] = None
    configure_parser: Callable[[argparse.ArgumentParser], None] = lambda p: None
    run: Callable[[argparse.Namespace], int] = lambda args: 0


COMMAND_REGISTRY: Dict[str, Command] = {}


def register_command(cmd: Command) -> None:
    COMMAND_REGISTRY[cmd.name] = cmd


def load_builtin_commands() -> None:
    """Load all builtin commands into the registry."""
    from . import point, profile, read, set, sweep

    register_command(point.get_command())
    register_command(profile.get_command())
    register_command(read.get_command())
    register_command(set.get_command())
    register_command(sweep.get_command())
