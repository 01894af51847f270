"""Distance-hereditary toolkit: recognition by twin/pendant pruning,
obstruction search (house, gem, domino, long holes), maximal bicliques, and
rank-width-one decompositions.

A graph is distance hereditary iff it can be dismantled by repeatedly
removing a pendant vertex or one of a twin pair; the pruning sequence doubles
as the positive certificate and replays into a rank-width-one decomposition.
Bicliques here follow the convention that the two parts need not be
independent sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .chordal import _hole_dfs, canonical_cycle, is_hole
from .graph import Graph, GraphError, connected_components, induced_subgraph


class NotDistanceHereditaryError(GraphError):
    def __init__(self, obstruction: "DHObstruction"):
        super().__init__(f"graph is not distance hereditary; witness {obstruction}")
        self.obstruction = obstruction


@dataclass(frozen=True)
class DHObstruction:
    """tag in {house, gem, domino, long-hole}; vertices in pattern order.

    house:  (apex, base0, base1, corner0, corner1) with square
            base0-base1-corner1-corner0 and roof apex-base0, apex-base1.
    gem:    (apex, p0, p1, p2, p3) with path p0-p1-p2-p3, apex joined to all.
    domino: hexagon order (u, a, b, v, d, c) plus the chord u-v.
    long-hole: cycle order, length >= 5.
    """
    tag: str
    vertices: tuple[int, ...]

    def relabel(self, back: list[int]) -> "DHObstruction":
        return DHObstruction(self.tag, tuple(back[v] for v in self.vertices))


def _edge_profile(tag: str, k: int) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Required edges and non-edges over pattern positions."""
    if tag == "house":
        edges = {(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)}
    elif tag == "gem":
        edges = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)}
    elif tag == "domino":
        edges = {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)}
    elif tag == "long-hole":
        edges = {(i, (i + 1) % k) for i in range(k)}
        edges = {(min(a, b), max(a, b)) for a, b in edges}
    else:
        raise GraphError(f"unknown obstruction tag {tag}")
    non = {(i, j) for i in range(k) for j in range(i + 1, k)} - edges
    return edges, non


def verify_obstruction(g: Graph, obs: DHObstruction) -> bool:
    vs = obs.vertices
    k = len(vs)
    if len(set(vs)) != k:
        return False
    if obs.tag == "long-hole":
        return k >= 5 and is_hole(g, vs)
    if (obs.tag, k) not in (("house", 5), ("gem", 5), ("domino", 6)):
        return False
    edges, non = _edge_profile(obs.tag, k)
    return (all(g.has_edge(vs[i], vs[j]) for i, j in edges)
            and not any(g.has_edge(vs[i], vs[j]) for i, j in non))


# -- targeted pattern scans ---------------------------------------------------

def _iter_houses(g: Graph) -> Iterator[DHObstruction]:
    for b0 in range(g.n):
        for b1 in sorted(g.adj[b0]):
            if b1 <= b0:
                continue
            roof = sorted(g.adj[b0] & g.adj[b1])
            for apex in roof:
                for c0 in sorted(g.adj[b0] - g.adj[b1] - g.adj[apex] - {b1, apex}):
                    if c0 == apex or g.has_edge(c0, apex):
                        continue
                    for c1 in sorted(g.adj[b1] & g.adj[c0]):
                        if c1 in (b0, apex) or g.has_edge(c1, b0) or g.has_edge(c1, apex):
                            continue
                        yield DHObstruction("house", (apex, b0, b1, c0, c1))


def _iter_gems(g: Graph) -> Iterator[DHObstruction]:
    for apex in range(g.n):
        band = g.adj[apex]
        for p1 in sorted(band):
            for p2 in sorted(band & g.adj[p1]):
                for p0 in sorted((band & g.adj[p1]) - g.adj[p2] - {p2}):
                    for p3 in sorted((band & g.adj[p2]) - g.adj[p1] - g.adj[p0] - {p0, p1}):
                        # orientation dedup: report each path once
                        if p0 < p3:
                            yield DHObstruction("gem", (apex, p0, p1, p2, p3))


def _iter_dominoes(g: Graph) -> Iterator[DHObstruction]:
    for u in range(g.n):
        for v in sorted(g.adj[u]):
            if v <= u:
                continue
            # hexagon u-a-b-v-d-c-u with chord u-v
            for a in sorted(g.adj[u] - g.adj[v] - {v}):
                for b in sorted((g.adj[v] & g.adj[a]) - g.adj[u] - {u}):
                    for c in sorted(g.adj[u] - g.adj[v] - g.adj[a] - g.adj[b] - {a, b, v}):
                        for d in sorted((g.adj[v] & g.adj[c]) - g.adj[u] - g.adj[a] - g.adj[b] - {a, b, u}):
                            key = (u, a, b, v, d, c)
                            if a < c:   # reflection dedup
                                yield DHObstruction("domino", key)


def _canonical_obstruction(obs: DHObstruction) -> tuple:
    if obs.tag == "long-hole":
        return (obs.tag, canonical_cycle(obs.vertices))
    return (obs.tag, tuple(sorted(obs.vertices)))


def enumerate_small_obstructions(g: Graph, max_size: int,
                                 budget: Optional[int] = None,
                                 ) -> list[DHObstruction]:
    """All DH-obstructions on at most max_size vertices, each once.

    Houses and gems need max_size >= 5, dominoes >= 6; holes are enumerated
    for lengths 5..max_size.
    """
    if max_size < 5:
        raise GraphError("max_size must be at least 5")
    seen: set[tuple] = set()
    out: list[DHObstruction] = []

    def push(obs: DHObstruction) -> None:
        key = _canonical_obstruction(obs)
        if key not in seen:
            seen.add(key)
            out.append(obs)

    for obs in _iter_houses(g):
        push(obs)
    for obs in _iter_gems(g):
        push(obs)
    if max_size >= 6:
        for obs in _iter_dominoes(g):
            push(obs)
    holes: list[tuple[int, ...]] = []
    res = _hole_dfs(g, None, 5, max_size, None, budget, holes)
    if not res.complete:
        raise GraphError("obstruction enumeration exceeded its node budget")
    for cyc in sorted(set(holes)):
        push(DHObstruction("long-hole", cyc))
    out.sort(key=_canonical_obstruction)
    return out


def find_obstruction(g: Graph, hole_budget: int = 2_000_000) -> Optional[DHObstruction]:
    """Some DH-obstruction, or None; the graph is scanned for the three small
    patterns first, then for a hole of length >= 5."""
    for it in (_iter_houses(g), _iter_gems(g), _iter_dominoes(g)):
        for obs in it:
            return obs
    res = _hole_dfs(g, None, 5, None, None, hole_budget, None)
    if res.hole is not None:
        return DHObstruction("long-hole", res.hole)
    if not res.complete:
        raise GraphError("obstruction witness search exceeded its node budget")
    return None


# -- recognition ---------------------------------------------------------------

@dataclass
class PruneStep:
    """One dismantling step: `vertex` removed as a pendant of / twin of
    `partner` (kinds: pendant, true-twin, false-twin)."""
    vertex: int
    kind: str
    partner: int


@dataclass
class DHResult:
    is_dh: bool
    pruning: Optional[list[PruneStep]] = None     # per-component certificate
    obstruction: Optional[DHObstruction] = None


def _find_elimination(adj: dict[int, set[int]]) -> Optional[PruneStep]:
    live = sorted(adj)
    for v in live:
        if len(adj[v]) == 1:
            return PruneStep(v, "pendant", next(iter(adj[v])))
    for i, u in enumerate(live):
        for v in live[i + 1:]:
            if adj[u] - {v} == adj[v] - {u}:
                kind = "true-twin" if v in adj[u] else "false-twin"
                return PruneStep(v, kind, u)
    return None


def is_distance_hereditary_with_witness(g: Graph) -> DHResult:
    """DH verdict with a pruning-sequence certificate, or an obstruction.

    Dismantles each component by pendant/twin removal; a component is DH iff
    it prunes to a single vertex, and any stuck remainder (an induced
    subgraph) is searched for a concrete obstruction.
    """
    steps: list[PruneStep] = []
    for comp in connected_components(g):
        adj = {v: set(g.adj[v]) & set(comp) for v in comp}
        while len(adj) > 1:
            step = _find_elimination(adj)
            if step is None:
                stuck, back = induced_subgraph(g, sorted(adj))
                obs = find_obstruction(stuck)
                assert obs is not None, "stuck pruning without an obstruction"
                return DHResult(False, obstruction=obs.relabel(back))
            v = step.vertex
            for u in adj[v]:
                adj[u].discard(v)
            del adj[v]
            steps.append(step)
    return DHResult(True, pruning=steps)


def is_distance_hereditary(g: Graph) -> bool:
    return is_distance_hereditary_with_witness(g).is_dh


# -- maximal bicliques ---------------------------------------------------------

@dataclass(frozen=True)
class Biclique:
    """Vertex bipartition (part1, part2), both nonempty, every cross pair
    adjacent; parts need not be independent and are stored canonically."""
    part1: tuple[int, ...]
    part2: tuple[int, ...]

    @staticmethod
    def of(a, b) -> "Biclique":
        pa, pb = tuple(sorted(a)), tuple(sorted(b))
        if (len(pa), pa) > (len(pb), pb):
            pa, pb = pb, pa
        return Biclique(pa, pb)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.part1 + self.part2))

    def relabel(self, back: list[int]) -> "Biclique":
        return Biclique.of([back[v] for v in self.part1],
                           [back[v] for v in self.part2])


def is_biclique(g: Graph, part1, part2) -> bool:
    p1, p2 = set(part1), set(part2)
    if not p1 or not p2 or p1 & p2:
        return False
    return all(g.has_edge(a, b) for a in p1 for b in p2)


def enumerate_maximal_bicliques(g: Graph, budget: int = 200_000) -> list[Biclique]:
    """All maximal bicliques via closure of neighborhood intersections.

    A pair (A,B) is a maximal biclique iff B is an intersection of
    neighborhoods and A is the common neighborhood of B (a Galois-closed
    pair), so breadth-first closure of {N(v)} under pairwise intersection
    with neighborhoods enumerates them all.  The count is cubic on graphs
    with no small DH-obstruction; `budget` caps pathological inputs.
    """
    closed: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []
    for v in range(g.n):
        nb = frozenset(g.adj[v])
        if nb and nb not in closed:
            closed.add(nb)
            queue.append(nb)
    while queue:
        cur = queue.pop()
        for v in range(g.n):
            nxt = cur & frozenset(g.adj[v])
            if nxt and nxt not in closed:
                if len(closed) >= budget:
                    raise GraphError("biclique enumeration exceeded its budget")
                closed.add(nxt)
                queue.append(nxt)
    found: set[Biclique] = set()
    for b in closed:
        a = set.intersection(*(g.adj[v] for v in b)) if b else set()
        if a and set.intersection(*(g.adj[v] for v in a)) == set(b):
            found.add(Biclique.of(a, b))
    return sorted(found, key=lambda bc: (bc.part1, bc.part2))


# -- rank-width-one decompositions ----------------------------------------------

@dataclass
class Rw1Decomposition:
    """Unrooted tree with internal degree three; `leaf_vertex[node]` maps leaf
    nodes to host vertices (None for internal nodes)."""
    node_count: int
    edges: list[tuple[int, int]]
    leaf_vertex: list[Optional[int]]

    def leaf_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.leaf_vertex) if v is not None}

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _attach_leaf(dec: Rw1Decomposition, at_node: int, vertex: Optional[int]) -> int:
    """Attach a new leaf next to `at_node`, keeping internal degree 3, and
    return the new leaf's node id."""
    adj = dec.adjacency()
    new_leaf = dec.node_count
    dec.leaf_vertex.append(vertex)
    dec.node_count += 1
    if not adj[at_node]:
        dec.edges.append((at_node, new_leaf))
        return new_leaf
    other = adj[at_node][0]
    mid = dec.node_count
    dec.leaf_vertex.append(None)
    dec.node_count += 1
    dec.edges.remove((min(at_node, other), max(at_node, other)))
    dec.edges.append((min(at_node, mid), max(at_node, mid)))
    dec.edges.append((min(other, mid), max(other, mid)))
    dec.edges.append((min(mid, new_leaf), max(mid, new_leaf)))
    return new_leaf


def rankwidth1_decomposition(g: Graph) -> Rw1Decomposition:
    """Rank-width-one decomposition of a distance-hereditary graph, built by
    replaying the pruning sequence as tree joins.  Components are linked with
    empty cuts, so disconnected inputs are accepted."""
    if g.n == 0:
        raise GraphError("empty graph has no decomposition")
    res = is_distance_hereditary_with_witness(g)
    if not res.is_dh:
        assert res.obstruction is not None
        raise NotDistanceHereditaryError(res.obstruction)
    assert res.pruning is not None
    eliminated_at: dict[int, PruneStep] = {s.vertex: s for s in res.pruning}
    comps = connected_components(g)
    dec = Rw1Decomposition(0, [], [])
    comp_anchor: list[int] = []
    for comp in comps:
        root = next(v for v in comp if v not in eliminated_at)
        node = dec.node_count
        dec.leaf_vertex.append(root)
        dec.node_count += 1
        leaf_of = {root: node}
        # replay this component's eliminations newest-first
        for step in reversed(res.pruning):
            if step.vertex not in leaf_of and step.partner in leaf_of:
                leaf_of[step.vertex] = _attach_leaf(
                    dec, leaf_of[step.partner], step.vertex)
        comp_anchor.append(leaf_of[root])
    for anchor in comp_anchor[1:]:
        # link component trees through a junction node; the new tree edge
        # crosses no graph edge, so its cut is empty
        joint = _attach_leaf(dec, comp_anchor[0], None)
        dec.edges.append((min(joint, anchor), max(joint, anchor)))
    dec.edges = sorted(dec.edges)
    return dec


def tree_edge_cut(dec: Rw1Decomposition, edge: tuple[int, int]) -> tuple[set[int], set[int]]:
    """Host-vertex bipartition induced by deleting one tree edge."""
    a, b = edge
    adj = dec.adjacency()
    side = set()
    stack = [a]
    seen = {a, b}
    while stack:
        cur = stack.pop()
        if dec.leaf_vertex[cur] is not None:
            side.add(dec.leaf_vertex[cur])
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    all_leaves = {v for v in dec.leaf_vertex if v is not None}
    return side, all_leaves - side


def cut_biclique(g: Graph, side_a: set[int], side_b: set[int]) -> Optional[tuple[set[int], set[int]]]:
    """Parts (M1, M2) of the cross-edge biclique, (set(), set()) for an empty
    cut, or None when the cut has rank greater than one."""
    m1 = {a for a in side_a if g.adj[a] & side_b}
    if not m1:
        return set(), set()
    m2: Optional[set[int]] = None
    for a in sorted(m1):
        nb = g.adj[a] & side_b
        if m2 is None:
            m2 = nb
        elif nb != m2:
            return None
    assert m2 is not None
    for b in sorted(m2):
        if g.adj[b] & side_a != m1:
            return None
    return m1, m2


def validate_rw1(g: Graph, dec: Rw1Decomposition) -> None:
    """Every tree edge must induce a biclique or empty cut; leaves must be in
    bijection with the host vertices."""
    leaves = [v for v in dec.leaf_vertex if v is not None]
    if sorted(leaves) != list(range(g.n)):
        raise GraphError("decomposition leaves do not match the vertex set")
    for i, deg in enumerate(_degrees(dec)):
        if dec.leaf_vertex[i] is None and deg not in (2, 3):
            raise GraphError(f"internal node {i} has degree {deg}")
    for edge in dec.edges:
        side_a, side_b = tree_edge_cut(dec, edge)
        if cut_biclique(g, side_a, side_b) is None:
            raise GraphError(f"tree edge {edge} induces a cut of rank > 1")


def _degrees(dec: Rw1Decomposition) -> list[int]:
    deg = [0] * dec.node_count
    for a, b in dec.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


@dataclass
class BalancedCut:
    edge: tuple[int, int]
    side1: set[int]            # host vertices, superset of m1
    side2: set[int]
    m1: set[int]               # biclique parts of the cut (may be empty)
    m2: set[int]


def balancing_rw1_cut(g: Graph, dec: Rw1Decomposition,
                      weights: Optional[dict[int, int]] = None) -> BalancedCut:
    """Tree edge whose leaf bipartition minimizes the heavier side.

    `weights` (default: one per vertex) lets callers balance a support set
    instead of the vertex count.  With unit weights the winning split is at
    most 3/4 of the total on each side for any graph with >= 2 vertices; the
    cut's cross biclique is returned alongside the sides.
    """
    if g.n < 2:
        raise GraphError("balancing cut needs at least two vertices")
    if weights is None:
        weights = {v: 1 for v in range(g.n)}
    best: Optional[tuple] = None
    for edge in sorted(dec.edges):
        side_a, side_b = tree_edge_cut(dec, edge)
        wa = sum(weights.get(v, 0) for v in side_a)
        wb = sum(weights.get(v, 0) for v in side_b)
        parts = cut_biclique(g, side_a, side_b)
        if parts is None:
            raise GraphError(f"tree edge {edge} induces a cut of rank > 1")
        key = (max(wa, wb), min(len(side_a), len(side_b)) == 0, edge)
        if best is None or key < best[0]:
            best = (key, edge, side_a, side_b, parts)
    assert best is not None
    _, edge, side_a, side_b, (m1, m2) = best
    if m1 and next(iter(m1)) not in side_a:
        m1, m2 = m2, m1
    return BalancedCut(edge, side_a, side_b, m1, m2)
