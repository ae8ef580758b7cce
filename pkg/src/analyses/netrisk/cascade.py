"""
Flow-based cascading failure (Motter-Lai) and choke-point ranking.

Load on a link is its unweighted shortest-path edge betweenness; parallel
links share the flow of their station pair equally. Capacity is alpha times
the initial load, or the link's rated capacity when asked for. After the
initial failures, loads are recomputed from scratch each round and every
link above capacity fails, until no link is overloaded.

External Libraries Used:
- networkx - edge and node betweenness centrality
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from analyses.netrisk.graph import InfraGraph, giant_component_size

logger = logging.getLogger(__name__)

LOAD_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CascadeResult:
    """timeline[0] is the initial failure set, timeline[i] the links lost in round i."""
    surviving_fraction: float
    giant_fraction: float
    timeline: List[Tuple[str, ...]] = field(default_factory=list)
    initial_loads: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def rounds(self) -> int:
        return len(self.timeline) - 1

    @property
    def failed(self) -> List[str]:
        return [e for step in self.timeline for e in step]


def edge_loads(h: nx.MultiGraph) -> Dict[str, float]:
    """Unnormalized edge betweenness keyed by edge id."""
    if h.number_of_edges() == 0:
        return {}
    bc = nx.edge_betweenness_centrality(h, normalized=False)
    return {key: load for (_, _, key), load in bc.items()}


def cascade_simulate(g: InfraGraph, initial_failures: Iterable[str], capacity_factor: float = 1.2,
                     rated: bool = False) -> CascadeResult:
    """
    Iterate load redistribution to a fixed point.

    rated=True uses each link's rated capacity where one is given and
    capacity_factor times the initial load elsewhere.
    """
    if capacity_factor < 1.0:
        raise ValueError("capacity factor must be >= 1")
    initial = sorted(set(initial_failures))
    unknown = [e for e in initial if not g.has_edge(e)]
    if unknown:
        raise ValueError(f"unknown edge ids in initial failures: {unknown[:5]}")

    h = g.copy_graph()
    loads0 = edge_loads(h)
    capacity = {}
    for e, load in loads0.items():
        cap = g.edge_capacity(e) if rated else None
        capacity[e] = cap if cap is not None else capacity_factor * load

    def remove(ids):
        for e in ids:
            u, v = g.endpoints(e)
            h.remove_edge(u, v, key=e)

    remove(initial)
    timeline: List[Tuple[str, ...]] = [tuple(initial)]
    limit = g.number_of_edges() + g.number_of_nodes()
    while len(timeline) <= limit:
        loads = edge_loads(h)
        overloaded = sorted(e for e, load in loads.items() if load > capacity[e] + LOAD_TOLERANCE)
        if not overloaded:
            break
        remove(overloaded)
        timeline.append(tuple(overloaded))
        logger.debug(f"cascade round {len(timeline) - 1}: {len(overloaded)} links fail")

    m = g.number_of_edges()
    n = g.number_of_nodes()
    result = CascadeResult(
        surviving_fraction=h.number_of_edges() / m if m else 1.0,
        giant_fraction=giant_component_size(h) / n if n else 0.0,
        timeline=timeline,
        initial_loads=loads0)
    logger.info(f"cascade: {len(result.failed)} of {m} links lost in {result.rounds} rounds")
    return result


def choke_points(g: InfraGraph, k: int, element: str = "node") -> List[Tuple[str, float]]:
    """
    Top-k nodes (or edges) by normalized betweenness, ties by lowest id.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if element == "node":
        scores = nx.betweenness_centrality(g.graph, normalized=True)
    elif element == "edge":
        if g.number_of_edges() == 0:
            return []
        scores = {key: s for (_, _, key), s in
                  nx.edge_betweenness_centrality(g.graph, normalized=True).items()}
    else:
        raise ValueError(f"unknown element {element!r}, expected 'node' or 'edge'")
    ranked = sorted(scores.items(), key=lambda kv: (-round(kv[1], 12), kv[0]))
    return ranked[:k]
