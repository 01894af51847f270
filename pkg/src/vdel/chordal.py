"""Chordal-graph toolkit: recognition with witnesses, clique forests, maximal
cliques, and chordless-cycle (hole) search.

Recognition is Lex-BFS plus the perfect-elimination check; a failed check is
turned into a concrete hole so every downstream feasibility claim stays
self-auditing.  Hole search is exhaustive DFS over chordless paths with
weight pruning and a node budget; shortest-hole detection is NP-hard in
general, which is why the budget knob exists (callers fall back to short-hole
enumeration when it trips).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .graph import Graph, GraphError, connected_components


class NotChordalError(GraphError):
    """Raised when a chordal-only operation receives a non-chordal graph."""

    def __init__(self, hole: tuple[int, ...]):
        super().__init__(f"graph is not chordal; witness hole {hole}")
        self.hole = hole


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically minimal rotation over both directions.

    Used to deduplicate holes up to rotation and reflection.
    """
    k = len(cycle)
    best: Optional[tuple[int, ...]] = None
    for seq in (list(cycle), list(reversed(cycle))):
        for shift in range(k):
            cand = tuple(seq[(shift + i) % k] for i in range(k))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def is_hole(g: Graph, cycle: Sequence[int]) -> bool:
    """Check the hole invariants: length >= 4, consecutive pairs adjacent,
    all other pairs non-adjacent."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(cycle[i], cycle[j])
            consecutive = (j - i == 1) or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def lex_bfs_order(g: Graph) -> list[int]:
    """Lexicographic BFS visit order; ties broken by smallest vertex index."""
    labels: list[list[int]] = [[] for _ in range(g.n)]
    visited = [False] * g.n
    order: list[int] = []
    for step in range(g.n, 0, -1):
        best = -1
        for v in range(g.n):
            if visited[v]:
                continue
            if best == -1 or labels[v] > labels[best]:
                best = v
        visited[best] = True
        order.append(best)
        for u in g.adj[best]:
            if not visited[u]:
                labels[u].append(step)
    return order


@dataclass
class ChordalityResult:
    chordal: bool
    peo: Optional[list[int]] = None           # elimination order when chordal
    hole: Optional[tuple[int, ...]] = None    # witness when not


def _hole_through_triple(g: Graph, v: int, a: int, b: int) -> Optional[tuple[int, ...]]:
    """Hole containing the path a-v-b, where a,b are non-adjacent neighbors
    of v: a shortest a-b path avoiding N[v] - {a,b} is induced, so closing it
    through v yields a chordless cycle."""
    banned = (g.adj[v] | {v}) - {a, b}
    parent = {a: -1}
    queue = [a]
    while queue:
        nxt: list[int] = []
        for u in queue:
            for w in sorted(g.adj[u]):
                if w in banned or w in parent:
                    continue
                parent[w] = u
                if w == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return canonical_cycle([v] + path)
                nxt.append(w)
        queue = nxt
    return None


def find_any_hole(g: Graph) -> Optional[tuple[int, ...]]:
    """Some hole of g, or None if g is chordal.  Polynomial: scans vertex
    triples (v; a,b non-adjacent neighbors) and searches a closing path."""
    for v in range(g.n):
        nbrs = sorted(g.adj[v])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if g.has_edge(a, b):
                    continue
                hole = _hole_through_triple(g, v, a, b)
                if hole is not None:
                    return hole
    return None


def is_chordal_with_witness(g: Graph) -> ChordalityResult:
    """Either a perfect elimination ordering or a hole.

    The PEO is the reversed Lex-BFS order; the witness for a failed
    elimination step is recovered from the violating triple, falling back to
    a full hole scan (the graph is certainly non-chordal at that point).
    """
    order = lex_bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.adj[v] if pos[u] < pos[v]]
        if not earlier:
            continue
        p = max(earlier, key=lambda u: pos[u])
        for w in earlier:
            if w != p and not g.has_edge(w, p):
                hole = _hole_through_triple(g, v, w, p)
                if hole is None:
                    hole = find_any_hole(g)
                assert hole is not None, "elimination failure without a hole"
                return ChordalityResult(False, hole=hole)
    return ChordalityResult(True, peo=list(reversed(order)))


def is_chordal(g: Graph) -> bool:
    return is_chordal_with_witness(g).chordal


# -- maximal cliques --------------------------------------------------------

def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (smallest index on ties)."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    order = []
    for _ in range(g.n):
        v = min((u for u in range(g.n) if alive[u]), key=lambda u: (deg[u], u))
        order.append(v)
        alive[v] = False
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
    return order


def enumerate_maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques via pivoting Bron-Kerbosch over the degeneracy
    order; output is canonically sorted."""
    out: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(g.adj[u] & p), -u))
        for v in sorted(p - g.adj[pivot]):
            expand(r | {v}, p & g.adj[v], x & g.adj[v])
            p.remove(v)
            x.add(v)

    order = degeneracy_order(g)
    rank = {v: i for i, v in enumerate(order)}
    for v in order:
        later = {u for u in g.adj[v] if rank[u] > rank[v]}
        earlier = g.adj[v] - later
        expand({v}, later, set(earlier))
    if g.n == 0:
        return []
    covered = set()
    for c in out:
        covered.update(c)
    for v in range(g.n):
        if v not in covered:
            out.append((v,))
    return sorted(out)


# -- clique forests ----------------------------------------------------------

@dataclass
class CliqueForest:
    """Forest decomposition whose bags are the maximal cliques of the host."""
    bags: list[tuple[int, ...]]
    tree_edges: list[tuple[int, int]] = field(default_factory=list)

    def neighbors_of(self, node: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == node:
                out.append(b)
            elif b == node:
                out.append(a)
        return sorted(out)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def build_clique_forest(g: Graph) -> CliqueForest:
    """Clique forest of a chordal graph: maximum-weight spanning forest of the
    clique intersection graph (weights |Ci & Cj|), which satisfies the
    running-intersection property exactly when the graph is chordal."""
    res = is_chordal_with_witness(g)
    if not res.chordal:
        assert res.hole is not None
        raise NotChordalError(res.hole)
    bags = enumerate_maximal_cliques(g)
    cand = []
    for i in range(len(bags)):
        si = set(bags[i])
        for j in range(i + 1, len(bags)):
            w = len(si & set(bags[j]))
            if w > 0:
                cand.append((-w, i, j))
    cand.sort()
    uf = _UnionFind(len(bags))
    edges = [(i, j) for negw, i, j in cand if uf.union(i, j)]
    forest = CliqueForest(bags=bags, tree_edges=sorted(edges))
    validate_clique_forest(g, forest)
    return forest


def validate_clique_forest(g: Graph, forest: CliqueForest) -> None:
    """Check all decomposition invariants; raises GraphError on violation."""
    bagsets = [set(b) for b in forest.bags]
    covered = set().union(*bagsets) if bagsets else set()
    if covered != g.vertex_set():
        raise GraphError("clique forest bags do not cover the vertex set")
    for u, v in g.edges():
        if not any(u in b and v in b for b in bagsets):
            raise GraphError(f"edge ({u},{v}) not inside any bag")
    nbrs: dict[int, list[int]] = {i: [] for i in range(len(forest.bags))}
    for a, b in forest.tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for v in range(g.n):
        nodes = [i for i, b in enumerate(bagsets) if v in b]
        if not nodes:
            raise GraphError(f"vertex {v} in no bag")
        seen = {nodes[0]}
        stack = [nodes[0]]
        allowed = set(nodes)
        while stack:
            cur = stack.pop()
            for nxt in nbrs[cur]:
                if nxt in allowed and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if seen != allowed:
            raise GraphError(f"bags containing {v} are not connected")
    for b in forest.bags:
        if not g.is_clique(b):
            raise GraphError(f"bag {b} is not a clique")
        others = g.vertex_set() - set(b)
        for v in others:
            if set(b) <= g.adj[v]:
                raise GraphError(f"bag {b} is not maximal (extendable by {v})")


# -- hole search -------------------------------------------------------------

@dataclass
class HoleSearch:
    """Result of a (possibly budgeted) search over holes."""
    hole: Optional[tuple[int, ...]]
    value: Optional[Fraction]
    complete: bool   # False when the node budget tripped before exhaustion


def _hole_dfs(g: Graph, values: Optional[Sequence[Fraction]], min_len: int,
              max_len: Optional[int], bound: Optional[Fraction],
              budget: Optional[int], collect: Optional[list[tuple[int, ...]]],
              ) -> HoleSearch:
    """Exhaustive DFS over chordless paths.

    A path (s, ..., last) is grown only through vertices > s that are
    adjacent to `last` and to no other path vertex; a neighbor of s closes a
    hole and is never extended (the closing edge would become a chord).
    Direction duplicates are removed by requiring second < closer.  `values`
    prunes by accumulated weight against `bound`/current best; `collect`
    gathers every hole instead of minimizing.
    """
    best: Optional[tuple[int, ...]] = None
    best_val: Optional[Fraction] = None
    nodes = 0
    complete = True
    touched = [0] * g.n   # how many current path vertices are adjacent
    on_path = [False] * g.n

    def value_of(v: int) -> Fraction:
        return values[v] if values is not None else Fraction(0)

    def prune_at() -> Optional[Fraction]:
        if collect is not None:
            return None
        if bound is not None and best_val is not None:
            return min(bound, best_val)
        return bound if bound is not None else best_val

    def record(path: list[int], w: int, nval: Fraction) -> None:
        nonlocal best, best_val
        if len(path) + 1 < max(4, min_len) or path[1] >= w:
            return
        if max_len is not None and len(path) + 1 > max_len:
            return
        if bound is not None and nval >= bound:
            return
        cyc = canonical_cycle(path + [w])
        if collect is not None:
            collect.append(cyc)
        elif best_val is None or nval < best_val or (nval == best_val and cyc < best):
            best, best_val = cyc, nval

    def explore(path: list[int], acc: Fraction) -> None:
        nonlocal nodes, complete
        nodes += 1
        if budget is not None and nodes > budget:
            complete = False
            return
        s, last = path[0], path[-1]
        on_path[last] = True
        for u in g.adj[last]:
            touched[u] += 1
        try:
            for w in sorted(g.adj[last]):
                if not complete:
                    return
                if w <= s or on_path[w]:
                    continue
                closing = g.has_edge(w, s)
                # adjacency to anything besides `last` (plus s when closing)
                # would create a chord
                if touched[w] != (2 if closing else 1):
                    continue
                nval = acc + value_of(w)
                if closing:
                    record(path, w, nval)
                    continue
                if max_len is not None and len(path) + 1 >= max_len:
                    continue
                limit = prune_at()
                if limit is not None and nval >= limit:
                    continue
                explore(path + [w], nval)
        finally:
            on_path[last] = False
            for u in g.adj[last]:
                touched[u] -= 1

    for s in range(g.n):
        if not complete:
            break
        on_path[s] = True
        for u in g.adj[s]:
            touched[u] += 1
        for second in sorted(g.adj[s]):
            if not complete:
                break
            if second <= s:
                continue
            acc = value_of(s) + value_of(second)
            limit = prune_at()
            if limit is not None and acc >= limit:
                continue
            explore([s, second], acc)
        on_path[s] = False
        for u in g.adj[s]:
            touched[u] -= 1
    if collect is not None:
        return HoleSearch(None, None, complete)
    return HoleSearch(best, best_val, complete)


def enumerate_short_holes(g: Graph, max_len: int,
                          budget: Optional[int] = None) -> list[tuple[int, ...]]:
    """All holes of length <= max_len, canonical, each exactly once."""
    if max_len < 4:
        raise GraphError("max_len must be at least 4")
    found: list[tuple[int, ...]] = []
    res = _hole_dfs(g, None, 4, max_len, None, budget, found)
    if not res.complete:
        raise GraphError("hole enumeration exceeded its node budget")
    return sorted(set(found))


def min_weight_hole(g: Graph, values: Sequence[Fraction], min_len: int = 4,
                    bound: Optional[Fraction] = None,
                    budget: Optional[int] = None) -> HoleSearch:
    """Hole of length >= min_len minimizing the value sum over its vertices.

    With `bound` set, search is pruned at that total: a complete result with
    no hole certifies that every hole of qualifying length has value >= bound.
    An incomplete result (budget trip) reports the best hole found so far.
    """
    if any(v < 0 for v in values):
        raise GraphError("hole search needs nonnegative values")
    if min_len < 4:
        raise GraphError("min_len must be at least 4")
    return _hole_dfs(g, values, min_len, None, bound, budget, None)
