"""Bad-cycle bookkeeping shared by the CVD and DHVD special cases.

A bad cycle is an obstruction spanning both recursive sides; it must cross
from the outer structure C to the balancing structure M through one path
segment per side.  For every non-adjacent pair (v,u) in C x M we collect the
side-i terminal pairs (attachment neighbors of eligible (v',u') pairs), pick
a side whose doubled fractional solution separates all of them (one exists
while the fractional solution is feasible), and hand those pairs to a
multicut solver on that side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graph import Graph, component_index, induced_subgraph, \
    vertex_weighted_shortest_path
from .lp import fs_restrict


def pair_terminals(g: Graph, c_set: list[int], m_set: list[int],
                   side_vertices: list[int]) -> dict[tuple[int, int], set[tuple[int, int]]]:
    """Per-(v,u) terminal sets for one side.

    For every eligible (v',u') (mutually non-adjacent, u' not adjacent to v,
    v' not adjacent to u) every connected pair of side-attachments (a,b) with
    a next to v' and b next to u' goes into the (v,u) bucket.  A pair may
    have a == b; separating it means deleting that vertex.
    """
    gi_set = set(side_vertices)
    sub, back = induced_subgraph(g, sorted(gi_set))
    labels = component_index(sub)
    comp = {h: labels[i] for i, h in enumerate(back)}
    eligible: list[tuple[int, int, list[int], list[int]]] = []
    for vp in c_set:
        for up in m_set:
            if vp == up or g.has_edge(vp, up):
                continue
            aset = sorted(g.adj[vp] & gi_set)
            bset = sorted(g.adj[up] & gi_set)
            if aset and bset:
                eligible.append((vp, up, aset, bset))
    out: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for v in c_set:
        for u in m_set:
            if g.has_edge(v, u) or v == u:
                continue
            bucket: set[tuple[int, int]] = set()
            for vp, up, aset, bset in eligible:
                if g.has_edge(v, up) or g.has_edge(u, vp):
                    continue
                for a in aset:
                    for b in bset:
                        if comp[a] == comp[b]:
                            bucket.add((min(a, b), max(a, b)))
            out[(v, u)] = bucket
    return out


def min_pair_distance(g: Graph, costs: Sequence[Fraction],
                      pairs: set[tuple[int, int]]) -> Optional[Fraction]:
    """Smallest vertex-weighted distance over the pairs; None when every pair
    is disconnected (nothing to separate)."""
    worst: Optional[Fraction] = None
    for a, b in sorted(pairs):
        if a == b:
            d: Optional[Fraction] = costs[a]
        else:
            hit = vertex_weighted_shortest_path(g, list(costs), a, b)
            d = None if hit is None else hit[0]
        if d is None:
            continue
        if worst is None or d < worst:
            worst = d
    return worst


@dataclass
class BadCycleCuts:
    """Terminal pairs routed to each side's multicut, plus forced deletions
    (degenerate (a,a) pairs); `resolved` is False when some (v,u) pair had no
    side separated by the doubled solution, a feasibility defect."""
    forced: set[int]
    side_pairs: tuple[list[tuple[int, int]], list[tuple[int, int]]]
    resolved: bool


def route_bad_cycles(res_g: Graph, x: Sequence[Fraction], c_set: list[int],
                     m_set: list[int],
                     side_graphs: list[tuple[Graph, list[int]]],
                     side_vertex_sets: list[list[int]]) -> BadCycleCuts:
    """Choose, for every non-adjacent (v,u) in C x M, a side whose doubled
    fractional values separate the whole terminal bucket, and collect the
    buckets per side."""
    two_x = [2 * val for val in x]
    buckets = [pair_terminals(res_g, c_set, m_set, side_vertex_sets[i])
               for i in (0, 1)]
    positions = [{h: i for i, h in enumerate(side_graphs[i][1])} for i in (0, 1)]
    forced: set[int] = set()
    side_pairs: tuple[list[tuple[int, int]], list[tuple[int, int]]] = ([], [])
    for key in sorted(buckets[0].keys() | buckets[1].keys()):
        locals_: list[set[tuple[int, int]]] = []
        dists: list[Optional[Fraction]] = []
        for i in (0, 1):
            bucket = buckets[i].get(key, set())
            local = {(positions[i][a], positions[i][b]) for a, b in bucket}
            locals_.append(local)
            gi, gi_back = side_graphs[i]
            dists.append(min_pair_distance(gi, fs_restrict(two_x, gi_back), local))
        qualifying = [i for i in (0, 1) if dists[i] is None or dists[i] >= 1]
        if not qualifying:
            return BadCycleCuts(set(), ([], []), False)
        i = qualifying[0]
        gi, gi_back = side_graphs[i]
        for a, b in sorted(locals_[i]):
            if a == b:
                forced.add(gi_back[a])
            else:
                side_pairs[i].append((a, b))
    return BadCycleCuts(forced, side_pairs, True)
