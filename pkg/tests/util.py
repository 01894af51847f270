"""Shared brute-force oracles for the test suite.

Everything here is deliberately naive: direct definitions, exhaustive
enumeration, no shared code with the library paths under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from vdel.graph import Graph
from vdel.rng import Rng


def random_graph(n: int, seed: int, p_numer: int = 1, p_denom: int = 2,
                 weights: str = "unit") -> Graph:
    rng = Rng(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.randint(p_denom) < p_numer:
                edges.append((u, v))
    if weights == "unit":
        w = [Fraction(1)] * n
    else:
        w = [Fraction(1 + rng.randint(8), 1 + rng.randint(4)) for _ in range(n)]
    return Graph(n, edges, weights=w)


def bf_all_simple_paths(g: Graph, s: int, t: int):
    """Yield every simple s-t path (as vertex lists)."""
    stack = [[s]]
    while stack:
        path = stack.pop()
        last = path[-1]
        if last == t:
            yield path
            continue
        for u in sorted(g.adj[last]):
            if u not in path:
                stack.append(path + [u])


def bf_shortest_vertex_path(g: Graph, costs, s, t):
    best = None
    for path in bf_all_simple_paths(g, s, t):
        c = sum((costs[v] for v in path), Fraction(0))
        if best is None or c < best:
            best = c
    return best


def bf_holes(g: Graph, min_len: int = 4, max_len=None):
    """All holes by checking every subset ordering: subsets that induce a
    cycle graph.  Exponential; fine at n <= 10."""
    out = set()
    top = g.n if max_len is None else min(g.n, max_len)
    for k in range(max(4, min_len), top + 1):
        for subset in combinations(range(g.n), k):
            sub_deg = {v: sum(1 for u in subset if u != v and g.has_edge(u, v))
                       for v in subset}
            if any(d != 2 for d in sub_deg.values()):
                continue
            # all degree two: a disjoint union of cycles; connected => cycle
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for u in subset:
                    if u != v and g.has_edge(u, v) and u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) == k:
                out.add(frozenset(subset))
    return out


def bf_is_chordal(g: Graph) -> bool:
    return not bf_holes(g)


def bf_max_cliques(g: Graph):
    cliques = set()
    for k in range(1, g.n + 1):
        for subset in combinations(range(g.n), k):
            if g.is_clique(subset):
                cliques.add(frozenset(subset))
    maximal = {c for c in cliques
               if not any(c < d for d in cliques if c != d)}
    return maximal


def bf_distances(g: Graph, inside) -> dict:
    """Hop distances within the induced subgraph on `inside`."""
    inside = set(inside)
    dist = {}
    for s in sorted(inside):
        d = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in g.adj[v]:
                    if u in inside and u not in d:
                        d[u] = d[v] + 1
                        nxt.append(u)
            frontier = nxt
        for t, dv in d.items():
            dist[(s, t)] = dv
    return dist


def bf_is_distance_hereditary(g: Graph) -> bool:
    """Definition check: every connected induced subgraph preserves
    distances.  Exponential; fine at n <= 8."""
    base = bf_distances(g, range(g.n))
    for k in range(2, g.n + 1):
        for subset in combinations(range(g.n), k):
            dist = bf_distances(g, subset)
            for (s, t), d in dist.items():
                if base.get((s, t)) is not None and d != base[(s, t)]:
                    return False
    return True


def bf_max_bicliques(g: Graph):
    """All maximal bicliques (parts need not be independent), n <= 9."""
    found = set()
    verts = list(range(g.n))
    for k in range(2, g.n + 1):
        for subset in combinations(verts, k):
            for split in range(1, 2 ** (k - 1)):
                a = frozenset(subset[i] for i in range(k) if (split >> i) & 1)
                b = frozenset(subset) - a
                if a and b and all(g.has_edge(x, y) for x in a for y in b):
                    found.add(frozenset((a, b)) if a != b else None)
    found.discard(None)
    maximal = set()
    for pair in found:
        a, b = tuple(pair) if len(pair) == 2 else (next(iter(pair)),) * 2
        dominated = False
        for other in found:
            if other == pair:
                continue
            c, d = tuple(other)
            if (a <= c and b <= d) or (a <= d and b <= c):
                dominated = True
                break
        if not dominated:
            maximal.add(pair)
    return maximal


def bf_min_deletion(g: Graph, keeps) -> Fraction:
    """Minimum weight set whose removal satisfies `keeps(residual vertex
    set)`; exhaustive over all subsets."""
    best = None
    for k in range(g.n + 1):
        for subset in combinations(range(g.n), k):
            rest = [v for v in range(g.n) if v not in set(subset)]
            if keeps(rest):
                w = g.weight(subset)
                if best is None or w < best:
                    best = w
    assert best is not None
    return best
