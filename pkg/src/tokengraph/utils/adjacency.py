"""Traversal helpers over adjacency lists (index -> neighbour indices).

Token graphs and underlying graphs both go through :func:`to_graph`, so all
traversal runs on networkx.
"""

from typing import Dict, List, Optional, Sequence

import networkx as nx

Adjacency = Sequence[Sequence[int]]


def to_graph(adjacency: Adjacency) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(adjacency)))
    graph.add_edges_from((u, w) for u, nbrs in enumerate(adjacency) for w in nbrs if u < w)
    return graph


def distances(adjacency: Adjacency, source: int) -> Dict[int, int]:
    """BFS distances from ``source`` to every reachable vertex."""
    return nx.single_source_shortest_path_length(to_graph(adjacency), source)


def components(adjacency: Adjacency) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    return sorted(sorted(part) for part in nx.connected_components(to_graph(adjacency)))


def is_connected(adjacency: Adjacency) -> bool:
    return len(adjacency) > 0 and nx.is_connected(to_graph(adjacency))


def is_bipartite(adjacency: Adjacency) -> bool:
    return nx.is_bipartite(to_graph(adjacency))


def diameter(adjacency: Adjacency) -> Optional[int]:
    """None when disconnected or empty."""
    if not adjacency:
        return None
    graph = to_graph(adjacency)
    return nx.diameter(graph) if nx.is_connected(graph) else None
