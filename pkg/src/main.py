"""
Main Entry Point - uci-monitor command line

Builds the run configuration, registers the subcommands and runs one of them
inside its content-addressed run directory.

Exit codes:
- 0: success
- 1: bad input (files, arguments, configuration, unknown subcommand)
- 2: internal invariant violated

External Libraries Used:
- argparse (Python Standard Library) - Command line parsing
- logging (Python Standard Library) - Application-wide logging configuration
- pathlib (Python Standard Library) - Path handling for imports
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path for imports
src_dir = Path(__file__).resolve().parent
if str(src_dir) not in sys.path:
    sys.path.insert(0, str(src_dir))

from commands import COMMANDS  # noqa: E402
from core.configuration import RunConfig  # noqa: E402
from core.errors import InputError, InvariantError  # noqa: E402
from core.load_save import RunStateManager  # noqa: E402
from core.pipelineManager import PipelineManager  # noqa: E402
from core.version import TOOL_NAME, TOOL_VERSION  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors share exit code 1."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def global_options() -> argparse.ArgumentParser:
    parent = ArgumentParser(add_help=False)
    group = parent.add_argument_group("run options")
    group.add_argument("--config", help="TOML run configuration")
    group.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                       help="override one configuration value (repeatable)")
    group.add_argument("--seed", type=int, help="override run.seed")
    group.add_argument("--out", help="override run.out_dir")
    group.add_argument("--plot", action="store_true", help="also render PNG plots")
    group.add_argument("--verbose", "-v", action="store_true", help="log progress")
    group.add_argument("--debug", action="store_true", help="log everything")
    return parent


def build_parser(manager: PipelineManager) -> ArgumentParser:
    parser = ArgumentParser(prog=TOOL_NAME,
                            description="UCI monitoring: AIS/SAR fusion, anomaly scoring, network risk")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    manager.add_subparsers(parser, [global_options()])
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True,
    )


def overrides(args: argparse.Namespace) -> List[str]:
    assignments = list(args.set)
    if args.out is not None:
        assignments.append(f"run.out_dir={json.dumps(args.out)}")
    if args.plot:
        assignments.append("run.plot=true")
    return assignments


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, configure and execute one subcommand. Raises on failure."""
    manager = PipelineManager()
    for command_class in COMMANDS:
        manager.register_command(command_class)

    args = build_parser(manager).parse_args(argv)
    if args.command is None:
        raise InputError(f"no subcommand given; choose one of {', '.join(manager.get_registered_commands())}")
    configure_logging(args)

    command = manager.get_command(args.command)
    if command is None:
        raise InputError(f"unknown subcommand {args.command!r}")
    config = RunConfig.build(args.config, overrides(args), args.seed)

    state = RunStateManager(config.run.out_dir, command.name, config,
                            command.inputs(args), command.params(args))
    state.open()
    command.run(args, config, state)
    if not state.finish():
        raise InputError(f"could not write the manifest in {state.run_dir}")
    print(state.run_dir)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    try:
        return run(argv)
    except ValueError as e:
        # InputError and precondition failures raised by the analyses
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as e:
        logger.exception("internal invariant violated")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
