"""Minor containment for small forbidden patterns, with verified models.

The built-in families ({K2}, {C3}, {K4}) get exact polynomial tests: an edge
probe, a cycle probe, and the series-parallel reduction (a graph has a K4
minor iff the loop/parallel/degree-two reduction of some block gets stuck).
Model extraction is generic: greedily contract or delete while the minor
survives the exact test, then read the model off the contraction groups.
Arbitrary patterns up to six vertices fall back to a complete branch-set
backtracking decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import Graph, GraphError, connected_components, induced_subgraph

MAX_PATTERN_SIZE = 6

MinorModel = dict[int, frozenset[int]]   # pattern vertex -> branch set


def pattern_graph(name: str) -> Graph:
    if name == "k2":
        return Graph(2, [(0, 1)])
    if name == "c3":
        return Graph(3, [(0, 1), (1, 2), (2, 0)])
    if name == "k4":
        return Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    raise GraphError(f"unknown pattern {name!r}")


@dataclass(frozen=True)
class MinorFamily:
    """Forbidden minors plus the treewidth bound of the minor-free class."""
    name: str
    members: tuple[str, ...]
    treewidth_bound: int


FAMILIES = {
    "k2": MinorFamily("k2", ("k2",), 0),     # vertex cover; residual is edgeless
    "c3": MinorFamily("c3", ("c3",), 1),     # feedback vertex set; forests
    "k4": MinorFamily("k4", ("k4",), 2),     # series-parallel residual
}


def verify_minor_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    """Branch sets disjoint and connected, one per pattern vertex, with a
    host edge behind every pattern edge."""
    if sorted(model) != list(range(h.n)):
        return False
    seen: set[int] = set()
    for vs in model.values():
        if not vs or seen & vs or any(not 0 <= v < g.n for v in vs):
            return False
        seen |= vs
        sub, _ = induced_subgraph(g, vs)
        if len(connected_components(sub)) != 1:
            return False
    for a, b in h.edges():
        if not any(g.has_edge(u, v) for u in model[a] for v in model[b]):
            return False
    return True


# -- fast exact tests ---------------------------------------------------------

def _first_edge_model(g: Graph) -> Optional[MinorModel]:
    for u, v in g.edges():
        return {0: frozenset([u]), 1: frozenset([v])}
    return None


def _find_cycle(g: Graph) -> Optional[list[int]]:
    color = [0] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root]:
            continue
        stack = [(root, -1)]
        while stack:
            v, p = stack.pop()
            if color[v]:
                continue
            color[v] = 1
            parent[v] = p
            for u in sorted(g.adj[v]):
                if u == p:
                    continue
                if color[u]:
                    # back edge v-u: walk v up to u
                    cyc = [v]
                    while cyc[-1] != u:
                        cyc.append(parent[cyc[-1]])
                        if cyc[-1] == -1:
                            break
                    if cyc[-1] == u:
                        return cyc
                else:
                    stack.append((u, v))
    return None


def _cycle_model(g: Graph) -> Optional[MinorModel]:
    cyc = _find_cycle(g)
    if cyc is None:
        return None
    return {0: frozenset([cyc[0]]), 1: frozenset([cyc[1]]),
            2: frozenset(cyc[2:])}


def _sp_reducible(n: int, edges: list[tuple[int, int]]) -> bool:
    """True when the multigraph reduces to nothing by loop removal, parallel
    merging and degree-two suppression, i.e. it has no K4 minor."""
    work = [e for e in edges if e[0] != e[1]]
    changed = True
    while changed and work:
        changed = False
        seen: set[tuple[int, int]] = set()
        dedup = []
        for u, v in work:
            key = (min(u, v), max(u, v))
            if key in seen:
                changed = True
                continue
            seen.add(key)
            dedup.append((u, v))
        work = dedup
        deg: dict[int, list[int]] = {}
        for i, (u, v) in enumerate(work):
            deg.setdefault(u, []).append(i)
            deg.setdefault(v, []).append(i)
        victim = None
        for v in sorted(deg):
            if len(deg[v]) <= 2:
                victim = v
                break
        if victim is None:
            continue
        changed = True
        inc = deg[victim]
        if len(inc) <= 1:
            work = [e for i, e in enumerate(work) if i not in inc]
        else:
            i1, i2 = inc
            a = work[i1][0] if work[i1][1] == victim else work[i1][1]
            b = work[i2][0] if work[i2][1] == victim else work[i2][1]
            work = [e for i, e in enumerate(work) if i not in (i1, i2)]
            if a != b:
                work.append((a, b))
    return not work


def has_k4_minor(g: Graph) -> bool:
    return not _sp_reducible(g.n, list(g.edges()))


# -- generic decision (small patterns) ----------------------------------------

def _branch_set_decision(g: Graph, h: Graph, budget: int = 2_000_000) -> bool:
    """Complete backtracking over branch-set embeddings of h into g."""
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    nodes = 0

    def satisfied(sets: dict[int, set[int]], a: int, b: int) -> bool:
        return any(g.has_edge(u, v) for u in sets[a] for v in sets[b])

    def grow(sets: dict[int, set[int]], used: set[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise GraphError("minor search budget exhausted")
        pending = [(a, b) for a, b in h.edges() if not satisfied(sets, a, b)]
        if not pending:
            return True
        a, b = pending[0]
        for side in (a, b):
            frontier = sorted(set().union(*(g.adj[v] for v in sets[side])) - used)
            for u in frontier:
                sets[side].add(u)
                used.add(u)
                if grow(sets, used):
                    return True
                sets[side].remove(u)
                used.remove(u)
        return False

    def seed(i: int, sets: dict[int, set[int]], used: set[int]) -> bool:
        if i == len(order):
            return grow(sets, used)
        hv = order[i]
        for v in range(g.n):
            if v in used:
                continue
            sets[hv] = {v}
            used.add(v)
            if seed(i + 1, sets, used):
                return True
            used.remove(v)
            del sets[hv]
        return False

    if h.n > g.n:
        return False
    return seed(0, {}, set())


def _decide_minor(g: Graph, h: Graph) -> bool:
    if h.n > MAX_PATTERN_SIZE:
        raise GraphError(f"patterns above {MAX_PATTERN_SIZE} vertices are unsupported")
    if h.n > g.n or h.edge_count() > g.edge_count():
        return False
    kind = _classify(h)
    if kind == "k2":
        return g.edge_count() > 0
    if kind == "c3":
        return _find_cycle(g) is not None
    if kind == "k4":
        return has_k4_minor(g)
    return _branch_set_decision(g, h)


def _classify(h: Graph) -> Optional[str]:
    for name in ("k2", "c3", "k4"):
        p = pattern_graph(name)
        if h.n == p.n and sorted(map(len, h.adj)) == sorted(map(len, p.adj)):
            if h.edge_count() == p.n * (p.n - 1) // 2 or name != "k4":
                # k2/c3/k4 are degree-regular, so the degree check suffices
                return name
    return None


def _contraction_model(g: Graph, h: Graph) -> MinorModel:
    """Shrink g by contractions/deletions that keep the minor, then map h
    onto the crystallized remainder."""
    groups: dict[int, set[int]] = {v: {v} for v in range(g.n)}
    work = g
    back = list(range(g.n))

    def still_has(candidate: Graph) -> bool:
        return _decide_minor(candidate, h)

    while True:
        if work.n == h.n and _spanning_map(work, h) is not None:
            break
        progress = False
        for u, v in work.edges():
            cand = _contract(work, u, v)
            if still_has(cand):
                groups[back[u]] |= groups[back[v]]
                del groups[back[v]]
                back = [b for i, b in enumerate(back) if i != v]
                work = cand
                progress = True
                break
        if progress:
            continue
        for v in range(work.n):
            cand, _ = induced_subgraph(work, [u for u in range(work.n) if u != v])
            if still_has(cand):
                del groups[back[v]]
                back = [b for i, b in enumerate(back) if i != v]
                work = cand
                progress = True
                break
        if not progress:
            raise AssertionError("minor extraction stalled while the minor persists")
    mapping = _spanning_map(work, h)
    assert mapping is not None
    return {hv: frozenset(groups[back[wv]]) for hv, wv in mapping.items()}


def _contract(g: Graph, u: int, v: int) -> Graph:
    """Contract edge (u,v): v merges into u, then reindex densely."""
    keep = [w for w in range(g.n) if w != v]
    pos = {w: i for i, w in enumerate(keep)}
    edges = set()
    for a, b in g.edges():
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            edges.add((min(pos[a2], pos[b2]), max(pos[a2], pos[b2])))
    return Graph(len(keep), sorted(edges))


def _spanning_map(work: Graph, h: Graph) -> Optional[dict[int, int]]:
    """Injective map of h onto all of work's vertices covering h's edges."""
    from itertools import permutations

    if work.n != h.n:
        return None
    for perm in permutations(range(work.n)):
        if all(work.has_edge(perm[a], perm[b]) for a, b in h.edges()):
            return {hv: perm[hv] for hv in range(h.n)}
    return None


def has_minor(g: Graph, h: Graph) -> Optional[MinorModel]:
    """A verified minor model of h in g, or None when g is h-minor-free."""
    if not _decide_minor(g, h):
        return None
    kind = _classify(h)
    model: Optional[MinorModel]
    if kind == "k2":
        model = _first_edge_model(g)
    elif kind == "c3":
        model = _cycle_model(g)
    else:
        model = _contraction_model(g, h)
    assert model is not None and verify_minor_model(g, h, model), \
        "minor extraction produced an invalid model"
    return model


def family_violation(g: Graph, family: MinorFamily) -> Optional[tuple[str, MinorModel]]:
    """First family member with a model in g, or None when minor-free."""
    for name in family.members:
        model = has_minor(g, pattern_graph(name))
        if model is not None:
            return name, model
    return None


def is_minor_free(g: Graph, family: MinorFamily) -> bool:
    return family_violation(g, family) is None


def treewidth_exact(g: Graph) -> int:
    """Exact treewidth by elimination-order DP over vertex subsets; meant for
    audits at n <= 12."""
    if g.n == 0:
        return 0
    if g.n > 14:
        raise GraphError("exact treewidth limited to n <= 14")
    full = (1 << g.n) - 1
    nbr = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]

    def q(mask: int, v: int) -> int:
        """Vertices outside mask+{v} reachable from v through mask."""
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            w = stack.pop()
            cand = nbr[w] & ~seen
            out |= cand & ~mask
            inside = cand & mask
            seen |= cand
            while inside:
                low = inside & -inside
                stack.append(low.bit_length() - 1)
                inside ^= low
        return bin(out & ~(1 << v)).count("1")

    best = {0: -1}
    for mask in range(1, full + 1):
        vals = []
        sub = mask
        while sub:
            low = sub & -sub
            v = low.bit_length() - 1
            prev = best[mask ^ low]
            vals.append(max(prev, q(mask ^ low, v)))
            sub ^= low
        best[mask] = min(vals)
    return best[full]
