"""Undirected simple graphs with exact rational vertex weights.

Vertices are dense indices 0..n-1.  Deletion never mutates a graph; it goes
through induced_subgraph, which returns a fresh graph plus a back-map to the
host's identities, so the recursive solvers stay pure.  Weights (and every
LP-adjacent quantity) are fractions.Fraction: the multicut binning argument
compares exact multiples of 1/n and would not survive floats.
"""

from __future__ import annotations

import heapq
import json
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph input (unknown vertex, self-loop, bad weight)."""


def as_weight(value) -> Fraction:
    """Coerce ints, floats, Fractions and 'p/q' strings to Fraction >= 0."""
    if isinstance(value, Fraction):
        w = value
    elif isinstance(value, str):
        w = Fraction(value)
    elif isinstance(value, int):
        w = Fraction(value)
    elif isinstance(value, float):
        w = Fraction(value).limit_denominator(10**9)
    else:
        raise GraphError(f"unsupported weight {value!r}")
    if w < 0:
        raise GraphError(f"negative weight {value!r}")
    return w


class Graph:
    """Simple graph: no self-loops, no parallel edges, symmetric adjacency."""

    __slots__ = ("n", "adj", "weights", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 weights: Optional[Sequence] = None,
                 labels: Optional[Sequence] = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self._add_edge(u, v)
        if weights is None:
            self.weights = [Fraction(1)] * n
        else:
            if len(weights) != n:
                raise GraphError("weight vector length must equal n")
            self.weights = [as_weight(w) for w in weights]
        if labels is None:
            self.labels = list(range(n))
        else:
            if len(labels) != n:
                raise GraphError("label vector length must equal n")
            self.labels = list(labels)

    def _add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u},{v}) out of range")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    # -- queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def weight(self, vertices: Iterable[int]) -> Fraction:
        """Total weight of a vertex set, the paper-style f(U) = sum f(v)."""
        return sum((self.weights[v] for v in vertices), Fraction(0))

    def vertex_set(self) -> set[int]:
        return set(range(self.n))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def __repr__(self) -> str:  # debugging aid only
        return f"Graph(n={self.n}, m={self.edge_count()})"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on `vertices` plus the back-map to g's indices.

    The sub-vertices are renumbered 0..k-1 in increasing host order; entry i
    of the back-map is the host index of sub-vertex i.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not (0 <= v < g.n):
            raise GraphError(f"unknown vertex {v}")
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u in keep for v in g.adj[u] if u < v and v in pos]
    sub = Graph(len(keep), edges,
                weights=[g.weights[v] for v in keep],
                labels=[g.labels[v] for v in keep])
    return sub, keep


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    """Convenience wrapper: induced subgraph on the complement of `removed`."""
    gone = set(removed)
    return induced_subgraph(g, [v for v in range(g.n) if v not in gone])


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by min."""
    seen = [False] * g.n
    parts: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        part = []
        while stack:
            v = stack.pop()
            part.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        parts.append(sorted(part))
    return parts


def component_index(g: Graph) -> list[int]:
    """Map from vertex to the index of its component in connected_components."""
    label = [-1] * g.n
    for i, part in enumerate(connected_components(g)):
        for v in part:
            label[v] = i
    return label


def vertex_weighted_shortest_path(
        g: Graph, costs: Sequence[Fraction], s: int, t: int,
) -> Optional[tuple[Fraction, list[int]]]:
    """Minimum of sum(costs[v] for v on P) over s-t paths, with a witness.

    The cost of a path includes BOTH endpoints.  Returns None when t is
    unreachable from s.  Dijkstra charges a vertex on entry and charges the
    source once up front; ties are broken by vertex index so the witness
    path is deterministic.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise GraphError(f"endpoint out of range: {s}, {t}")
    if len(costs) != g.n:
        raise GraphError("cost vector length must equal n")
    dist: list[Optional[Fraction]] = [None] * g.n
    parent = [-1] * g.n
    dist[s] = costs[s]
    heap: list[tuple[Fraction, int]] = [(costs[s], s)]
    visited = [False] * g.n
    while heap:
        d, v = heapq.heappop(heap)
        if visited[v]:
            continue
        visited[v] = True
        if v == t:
            break
        for u in sorted(g.adj[v]):
            if visited[u]:
                continue
            nd = d + costs[u]
            if dist[u] is None or nd < dist[u]:
                dist[u] = nd
                parent[u] = v
                heapq.heappush(heap, (nd, u))
    if dist[t] is None or not visited[t]:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return dist[t], path


def vertex_weighted_distances(
        g: Graph, costs: Sequence[Fraction], source: int,
) -> list[Optional[Fraction]]:
    """d(v) = min over source-v paths of the path's total vertex cost."""
    if len(costs) != g.n:
        raise GraphError("cost vector length must equal n")
    dist: list[Optional[Fraction]] = [None] * g.n
    dist[source] = costs[source]
    heap: list[tuple[Fraction, int]] = [(costs[source], source)]
    visited = [False] * g.n
    while heap:
        d, v = heapq.heappop(heap)
        if visited[v]:
            continue
        visited[v] = True
        for u in g.adj[v]:
            if visited[u]:
                continue
            nd = d + costs[u]
            if dist[u] is None or nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


# -- serialization ---------------------------------------------------------

def weight_to_str(w: Fraction) -> str:
    """Canonical 'p/q' (or 'p' for integers); round-trips bit-exactly."""
    return str(w)


def graph_to_dict(g: Graph) -> dict:
    d = {
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges()],
        "weights": [weight_to_str(w) for w in g.weights],
    }
    if g.labels != list(range(g.n)):
        d["labels"] = list(g.labels)
    return d


def graph_from_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = [(int(u), int(v)) for u, v in d.get("edges", [])]
        weights = d.get("weights")
        labels = d.get("labels")
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from exc
    return Graph(n, edges, weights=weights, labels=labels)


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def graph_from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


def write_graph_json(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_json(g) + "\n")


def read_graph_json(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def write_edge_list(g: Graph, edge_path: str, weight_path: str) -> None:
    """DIMACS-like 1-based edge list plus a companion weight file."""
    with open(edge_path, "w", encoding="utf-8") as fh:
        fh.write(f"p edge {g.n} {g.edge_count()}\n")
        for u, v in g.edges():
            fh.write(f"e {u + 1} {v + 1}\n")
    with open(weight_path, "w", encoding="utf-8") as fh:
        for w in g.weights:
            fh.write(weight_to_str(w) + "\n")


def read_edge_list(edge_path: str, weight_path: Optional[str] = None) -> Graph:
    n = 0
    edges: list[tuple[int, int]] = []
    with open(edge_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise GraphError(f"unrecognized edge-list line: {line!r}")
    weights = None
    if weight_path is not None:
        with open(weight_path, encoding="utf-8") as fh:
            weights = [as_weight(line.strip()) for line in fh if line.strip()]
    return Graph(n, edges, weights=weights)
