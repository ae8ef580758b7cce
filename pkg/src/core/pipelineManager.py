"""
Pipeline Manager - registry of subcommands.

This module is responsible for:
- Registering subcommand classes implementing CommandInterface
- Building the argparse subparsers from the registry
- Handing out command instances by name

External Libraries Used:
- argparse (Python Standard Library) - Subparser construction
"""
import argparse
import logging
from typing import Dict, List, Optional

from .interface import CommandInterface

logger = logging.getLogger(__name__)


class PipelineManager:
    """Keeps the registered subcommands in registration order."""

    def __init__(self):
        self._registered_commands: Dict[str, type] = {}

    def register_command(self, command_class: type) -> None:
        """
        Register a subcommand type under its `name`.

        Raises:
            ValueError: class does not implement CommandInterface, or name taken
        """
        if not isinstance(command_class, type) or not issubclass(command_class, CommandInterface):
            raise ValueError("Command class must implement CommandInterface")
        name = command_class.name
        if not name:
            raise ValueError(f"{command_class.__name__} has no command name")
        if name in self._registered_commands:
            raise ValueError(f"Command '{name}' already registered")
        self._registered_commands[name] = command_class
        logger.debug(f"Registered command: {name}")

    def get_registered_commands(self) -> List[str]:
        return list(self._registered_commands.keys())

    def get_command(self, name: str) -> Optional[CommandInterface]:
        """
        Returns:
            New command instance, None if the name is not registered
        """
        if name not in self._registered_commands:
            logger.error(f"Command '{name}' not registered")
            return None
        return self._registered_commands[name]()

    def add_subparsers(self, parser: argparse.ArgumentParser, parents: List[argparse.ArgumentParser]) -> None:
        sub = parser.add_subparsers(dest="command", metavar="COMMAND")
        for name, command_class in self._registered_commands.items():
            command_parser = sub.add_parser(name, help=command_class.help, parents=parents)
            command_class().add_arguments(command_parser)
