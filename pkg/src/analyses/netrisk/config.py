"""
Network Risk Configuration.

Contains:
- Cascade capacity factor alpha and rated-capacity switch
- Initial failure set (edge ids and/or one interdependency kind)
- Removal target for robustness curves
- Number of choke points reported
"""
from typing import List

from analyses.netrisk.robustness import Target


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        self.alpha: float = 1.2
        self.rated_capacity: bool = False

        """Initial failures: comma-separated edge ids, plus every edge of initial_kind"""
        self.initial_edges: str = ""
        self.initial_kind: str = ""

        self.target: str = "node"
        self.random_replays: int = 1
        self.choke_k: int = 10

        self.importExportVariableList = [
            "alpha", "rated_capacity", "initial_edges", "initial_kind",
            "target", "random_replays", "choke_k",
        ]

    def initial_edge_ids(self) -> List[str]:
        return [e.strip() for e in self.initial_edges.split(",") if e.strip()]

    def validate(self) -> List[str]:
        problems = []
        if self.alpha < 1.0:
            problems.append("netrisk.alpha must be >= 1")
        if self.target not in {t.value for t in Target}:
            problems.append(f"netrisk.target must be one of {[t.value for t in Target]}")
        if self.random_replays < 1:
            problems.append("netrisk.random_replays must be >= 1")
        if self.choke_k < 1:
            problems.append("netrisk.choke_k must be >= 1")
        return problems
