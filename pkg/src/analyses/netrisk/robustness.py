"""
Robustness curves - connectivity loss under random failure or targeted attack.

After every removal the size of the largest connected component is divided by
the ORIGINAL node count, so curves are nonincreasing and comparable across
scenarios. Removed nodes count as lost.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from analyses.netrisk.graph import InfraGraph, giant_component_size

logger = logging.getLogger(__name__)

CurvePoint = Tuple[float, float]


class ScenarioMode(str, Enum):
    RANDOM = "random"
    DEGREE_TARGETED = "degree_targeted"
    CUSTOM = "custom"


class Target(str, Enum):
    NODE = "node"
    EDGE = "edge"


@dataclass(frozen=True)
class FailureScenario:
    """
    What is removed and in which order.

    removal_order is used by custom mode. random mode removes every element in
    a seed-deterministic permutation; degree_targeted removes the current
    highest-degree element first (edges rank by the sum of their endpoint
    degrees), ties going to the lowest id.
    """
    mode: ScenarioMode = ScenarioMode.DEGREE_TARGETED
    target: Target = Target.NODE
    removal_order: Tuple[str, ...] = ()
    rng_seed: int = 0
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mode", ScenarioMode(self.mode))
        object.__setattr__(self, "target", Target(self.target))
        object.__setattr__(self, "removal_order", tuple(str(i) for i in self.removal_order))
        if len(set(self.removal_order)) != len(self.removal_order):
            raise ValueError("removal order contains duplicate ids")
        if self.mode == ScenarioMode.CUSTOM and not self.removal_order:
            raise ValueError("custom scenario needs a removal order")

    @property
    def name(self) -> str:
        return self.label or f"{self.mode.value}-{self.target.value}"

    @classmethod
    def by_kind(cls, g: InfraGraph, kind: str) -> "FailureScenario":
        """Coordinated attack on every link with the given interdependency label."""
        ids = g.edges_of_kind(kind)
        if not ids:
            raise ValueError(f"no edges of kind {kind!r}")
        return cls(mode=ScenarioMode.CUSTOM, target=Target.EDGE, removal_order=tuple(ids),
                   label=f"kind-{kind}")

    def check_against(self, g: InfraGraph) -> None:
        exists = g.has_node if self.target == Target.NODE else g.has_edge
        missing = [i for i in self.removal_order if not exists(i)]
        if missing:
            raise ValueError(f"unknown {self.target.value} ids in removal order: {missing[:5]}")


def _next_node(h: nx.MultiGraph) -> str:
    return min(h.nodes, key=lambda n: (-h.degree(n), n))


def _next_edge(h: nx.MultiGraph) -> Tuple[str, str, str]:
    return min(h.edges(keys=True), key=lambda e: (-(h.degree(e[0]) + h.degree(e[1])), e[2]))


def robustness_curve(g: InfraGraph, scenario: FailureScenario) -> List[CurvePoint]:
    """
    (fraction_removed, giant_component_fraction) starting at (0, initial giant).

    Raises:
        ValueError: empty graph, or a removal order naming unknown elements
    """
    n = g.number_of_nodes()
    if n == 0:
        raise ValueError("robustness curve of an empty graph")
    scenario.check_against(g)
    h = g.copy_graph()
    by_node = scenario.target == Target.NODE
    total = n if by_node else g.number_of_edges()
    if total == 0:
        return [(0.0, giant_component_size(h) / n)]

    if scenario.mode == ScenarioMode.CUSTOM:
        order: Sequence[str] = scenario.removal_order
    elif scenario.mode == ScenarioMode.RANDOM:
        ids = g.node_ids() if by_node else g.edge_ids()
        order = [ids[i] for i in np.random.default_rng(scenario.rng_seed).permutation(len(ids))]
    else:
        order = []

    curve = [(0.0, giant_component_size(h) / n)]
    for step in range(len(order) if order else total):
        if by_node:
            victim = order[step] if order else _next_node(h)
            h.remove_node(victim)
        else:
            if order:
                u, v = g.endpoints(order[step])
                h.remove_edge(u, v, key=order[step])
            else:
                u, v, key = _next_edge(h)
                h.remove_edge(u, v, key=key)
        curve.append(((step + 1) / total, giant_component_size(h) / n))
    logger.debug(f"{scenario.name}: {len(curve) - 1} removals, final giant fraction {curve[-1][1]:.3f}")
    return curve


def curve_area(curve: Sequence[CurvePoint]) -> float:
    """Trapezoidal area under a robustness curve."""
    if len(curve) < 2:
        return 0.0
    x, y = np.asarray(curve, dtype=float).T
    return float(np.trapezoid(y, x))
