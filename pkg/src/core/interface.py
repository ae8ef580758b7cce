"""
Uniform interface contract for all pipeline commands.
All subcommands must inherit from CommandInterface.

Defines the API the PipelineManager and the command line rely on, so any
analysis can be exposed as a subcommand the same way.

External Libraries Used:
- abc (Python Standard Library) - Abstract base class support
- argparse (Python Standard Library) - Subcommand argument declaration
"""
import argparse
from abc import ABC, abstractmethod
from typing import Dict, TYPE_CHECKING

if TYPE_CHECKING:
    from .configuration import RunConfig
    from .load_save import RunStateManager


class CommandInterface(ABC):
    """Base class for all subcommands ensuring uniform API."""

    name: str = ""
    help: str = ""

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the subcommand's own arguments (input files, times)."""
        pass

    @abstractmethod
    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        """
        Input files by role. Their digests key the run directory.

        Returns:
            {role: path} for every file argument that was given
        """
        pass

    def params(self, args: argparse.Namespace) -> Dict[str, str]:
        """Non-file arguments that change the output (keyed into the run directory)."""
        return {}

    @abstractmethod
    def run(self, args: argparse.Namespace, config: 'RunConfig', state: 'RunStateManager') -> None:
        """
        Execute and write artifacts through state.output.

        Raises:
            InputError: bad input (exit code 1)
            InvariantError: internal invariant violated (exit code 2)
        """
        pass
