"""
Infrastructure graph - landing stations and junctions joined by cables and pipes.

The graph is an undirected networkx MultiGraph: parallel links between the same
two stations are common (several cables on one route) and each keeps its own
id, kind label and optional rated capacity. Node and edge ids are strings;
every deterministic tie-break in this package orders by id.

Contains:
- InfraGraph: validated wrapper around the MultiGraph
- preferential_attachment_graph: scale-free test networks

External Libraries Used:
- networkx - graph storage, components and betweenness
- numpy - seeded random generator for the preferential-attachment model
"""
import logging
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from geo import GeoPoint

logger = logging.getLogger(__name__)

DEFAULT_EDGE_KIND = "cable"


class InfraGraph:
    """
    Nodes carry an optional position and capacity, edges an id, a kind label
    (interdependency type: physical, cyber, pipeline, ...) and an optional
    rated capacity. No self-loops; endpoints must exist; capacities > 0.
    """

    def __init__(self):
        self._g = nx.MultiGraph()
        self._edges: Dict[str, Tuple[str, str]] = {}

    # ========================================================================
    # CONSTRUCTION
    # ========================================================================

    def add_node(self, node_id: str, pos: Optional[GeoPoint] = None,
                 capacity: Optional[float] = None) -> None:
        node_id = str(node_id)
        if node_id in self._g:
            raise ValueError(f"duplicate node id {node_id!r}")
        if capacity is not None and not capacity > 0:
            raise ValueError(f"node {node_id!r}: capacity must be > 0")
        self._g.add_node(node_id, pos=pos, capacity=capacity)

    def add_edge(self, edge_id: str, src: str, dst: str, kind: str = DEFAULT_EDGE_KIND,
                 capacity: Optional[float] = None) -> None:
        edge_id, src, dst = str(edge_id), str(src), str(dst)
        if edge_id in self._edges:
            raise ValueError(f"duplicate edge id {edge_id!r}")
        if src == dst:
            raise ValueError(f"edge {edge_id!r} is a self-loop on {src!r}")
        for end in (src, dst):
            if end not in self._g:
                raise ValueError(f"edge {edge_id!r}: unknown node {end!r}")
        if capacity is not None and not capacity > 0:
            raise ValueError(f"edge {edge_id!r}: capacity must be > 0")
        self._g.add_edge(src, dst, key=edge_id, kind=kind, capacity=capacity)
        self._edges[edge_id] = (src, dst)

    @classmethod
    def from_edges(cls, edges: List[Tuple[str, str]], kind: str = DEFAULT_EDGE_KIND) -> "InfraGraph":
        """Graph from (src, dst) pairs; nodes are implied, edge ids are e0, e1, ..."""
        g = cls()
        width = len(str(max(len(edges) - 1, 0)))
        for i, (src, dst) in enumerate(edges):
            for end in (str(src), str(dst)):
                if not g.has_node(end):
                    g.add_node(end)
            g.add_edge(f"e{i:0{width}d}", src, dst, kind)
        return g

    # ========================================================================
    # QUERIES
    # ========================================================================

    @property
    def graph(self) -> nx.MultiGraph:
        """Underlying MultiGraph; edge keys are the edge ids. Treat as read-only."""
        return self._g

    def number_of_nodes(self) -> int:
        return self._g.number_of_nodes()

    def number_of_edges(self) -> int:
        return len(self._edges)

    def has_node(self, node_id: str) -> bool:
        return node_id in self._g

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def node_ids(self) -> List[str]:
        return sorted(self._g.nodes)

    def edge_ids(self) -> List[str]:
        return sorted(self._edges)

    def endpoints(self, edge_id: str) -> Tuple[str, str]:
        return self._edges[edge_id]

    def edge_kind(self, edge_id: str) -> str:
        u, v = self._edges[edge_id]
        return self._g.edges[u, v, edge_id]["kind"]

    def edge_capacity(self, edge_id: str) -> Optional[float]:
        u, v = self._edges[edge_id]
        return self._g.edges[u, v, edge_id]["capacity"]

    def node_pos(self, node_id: str) -> Optional[GeoPoint]:
        return self._g.nodes[node_id]["pos"]

    def edges_of_kind(self, kind: str) -> List[str]:
        return [e for e in self.edge_ids() if self.edge_kind(e) == kind]

    def kinds(self) -> List[str]:
        return sorted({self.edge_kind(e) for e in self._edges})

    def iter_edges(self) -> Iterator[Tuple[str, str, str, str, Optional[float]]]:
        """(id, src, dst, kind, capacity) in id order."""
        for e in self.edge_ids():
            u, v = self._edges[e]
            yield e, u, v, self.edge_kind(e), self.edge_capacity(e)

    def copy_graph(self) -> nx.MultiGraph:
        return self._g.copy()


def giant_component_size(g: nx.Graph) -> int:
    if g.number_of_nodes() == 0:
        return 0
    return max(len(c) for c in nx.connected_components(g))


def preferential_attachment_graph(n: int, m: int, seed: int) -> InfraGraph:
    """
    Barabasi-Albert graph: each new node links to m distinct existing nodes
    chosen with probability proportional to degree. Seed-deterministic.
    """
    if m < 1 or n <= m:
        raise ValueError("preferential attachment needs 1 <= m < n")
    rng = np.random.default_rng(seed)
    width = len(str(n - 1))
    name = [f"n{i:0{width}d}" for i in range(n)]
    g = InfraGraph()
    for i in range(m + 1):
        g.add_node(name[i])
    edges = []
    # start from a star on the first m + 1 nodes
    endpoints: List[int] = []
    for i in range(1, m + 1):
        edges.append((0, i))
        endpoints += [0, i]
    for new in range(m + 1, n):
        g.add_node(name[new])
        targets = set()
        while len(targets) < m:
            targets.add(endpoints[int(rng.integers(len(endpoints)))])
        for t in sorted(targets):
            edges.append((new, t))
            endpoints += [new, t]
    ew = len(str(len(edges) - 1))
    for i, (u, v) in enumerate(edges):
        g.add_edge(f"e{i:0{ew}d}", name[u], name[v])
    logger.debug(f"preferential attachment graph: {n} nodes, {len(edges)} edges, seed {seed}")
    return g
