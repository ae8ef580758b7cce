"""
Evidential Configuration - rule file and status-consistency cap.
"""
from pathlib import Path
from typing import List


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        # empty: shipped illustrative rules
        self.rule_file: str = ""
        self.status_cap: float = 0.9

        self.importExportVariableList = ["rule_file", "status_cap"]

    def validate(self) -> List[str]:
        problems = []
        if self.rule_file and not Path(self.rule_file).is_file():
            problems.append(f"evidential.rule_file {self.rule_file!r} does not exist")
        if not 0.0 <= self.status_cap <= 1.0:
            problems.append("evidential.status_cap must lie in [0, 1]")
        return problems
