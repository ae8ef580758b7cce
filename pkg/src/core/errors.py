"""
Error hierarchy shared by every analysis and by the command line.

InputError subclasses map to exit code 1, InvariantError subclasses to exit code 2.
Value-level precondition failures also derive from ValueError so library callers
can catch them without importing this module.
"""
from typing import List


class UciMonitorError(Exception):
    """Base class for all errors raised by the toolkit."""


class InputError(UciMonitorError, ValueError):
    """Bad input file, argument or precondition."""


class InvariantError(UciMonitorError):
    """An internal invariant did not hold; indicates a bug, not bad input."""


class IngestError(InputError):
    """File-level ingest failure (missing file, wrong header)."""


class ConfigValidationError(InputError):
    """Configuration failed validation. Carries every problem found."""

    def __init__(self, problems: List[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  - " + "\n  - ".join(self.problems))


class InsufficientDataError(InputError):
    """Not enough observations for an estimate."""


class DegenerateTrackError(InputError):
    """Observations carry no variation to estimate from."""


class TotalConflictError(InputError):
    """Two bodies of evidence are fully contradictory."""


class RuleSyntaxError(InputError):
    """Malformed line in a rule file."""

    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class EmptyRuleSetError(InputError):
    """A rule file declared no rules."""
