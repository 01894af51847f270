"""Weighted vertex multicut: exact LP by path separation, a constant-factor
rounding on chordal graphs, and a log-factor region-growing rounding for
general graphs.

The chordal rounding follows the clique-tree bin scheme: make the fractional
solution nice (multiples of 1/n), strip values >= 1/8 into the solution, and
on each component pick the cheapest of n+1 distance bins measured from an
arbitrary root vertex of an arbitrary root bag.  Everything is exact rational
arithmetic; the factor obtained is 4c with c = 8, asserted per run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certificates import CertificateViolation, DeletionCertificate
from .chordal import NotChordalError, build_clique_forest, is_chordal_with_witness
from .graph import (Graph, GraphError, component_index, connected_components,
                    induced_subgraph, vertex_weighted_distances,
                    vertex_weighted_shortest_path)
from .lp import (CoverResult, FractionalSolution, OracleAnswer, fs_restrict,
                 fs_weight, nicify, solve_cover_lp, strip_high)

CHORDAL_BIN_CONSTANT = 8           # the scheme's c; final factor is 4c = 32
CHORDAL_MULTICUT_FACTOR = 4 * CHORDAL_BIN_CONSTANT


@dataclass(frozen=True)
class MulticutInstance:
    graph: Graph
    pairs: tuple[tuple[int, int], ...]

    @staticmethod
    def make(graph: Graph, pairs) -> "MulticutInstance":
        norm = []
        for s, t in pairs:
            if s == t:
                raise GraphError(f"terminal pair ({s},{t}) is degenerate")
            if not (0 <= s < graph.n and 0 <= t < graph.n):
                raise GraphError(f"terminal pair ({s},{t}) out of range")
            norm.append((min(s, t), max(s, t)))
        return MulticutInstance(graph, tuple(sorted(set(norm))))


def verify_multicut(inst: MulticutInstance, solution) -> bool:
    """True iff no terminal pair stays connected after deleting `solution`.
    A deleted terminal counts as cut."""
    sol = set(solution)
    keep = [v for v in range(inst.graph.n) if v not in sol]
    sub, back = induced_subgraph(inst.graph, keep)
    pos = {h: i for i, h in enumerate(back)}
    comp = component_index(sub)
    for s, t in inst.pairs:
        if s in sol or t in sol:
            continue
        if comp[pos[s]] == comp[pos[t]]:
            return False
    return True


def multicut_lp(inst: MulticutInstance,
                max_rows: Optional[int] = None) -> CoverResult:
    """Exact LP: min w.y with y(V(P)) >= 1 for every terminal path P,
    separated by vertex-weighted shortest paths."""

    def oracle(g: Graph, x: FractionalSolution) -> OracleAnswer:
        for s, t in inst.pairs:
            hit = vertex_weighted_shortest_path(g, x, s, t)
            if hit is not None and hit[0] < 1:
                return OracleAnswer(tuple(hit[1]))
        return OracleAnswer(None)

    return solve_cover_lp(inst.graph, oracle, max_rows)


def _certificate(problem: str, inst: MulticutInstance, solution: set[int],
                 lp_weight: Fraction, factor: float, constants: dict,
                 breakdown: dict, flags: list[str]) -> DeletionCertificate:
    cert = DeletionCertificate(
        problem=problem,
        solution=sorted(solution),
        weight=inst.graph.weight(solution),
        lower_bound=lp_weight,
        claimed_factor=factor,
        constants=constants,
        breakdown=breakdown,
        flags=flags,
    )
    if not verify_multicut(inst, solution):
        raise CertificateViolation("multicut output leaves a pair connected")
    return cert


def solve_multicut_chordal(inst: MulticutInstance,
                           max_rows: Optional[int] = None) -> DeletionCertificate:
    """Constant-factor multicut on a chordal graph; w(S) <= 32 w(y_LP) is
    asserted exactly on every run."""
    g = inst.graph
    chord = is_chordal_with_witness(g)
    if not chord.chordal:
        assert chord.hole is not None
        raise NotChordalError(chord.hole)
    c = Fraction(CHORDAL_BIN_CONSTANT)
    constants = {"c": CHORDAL_BIN_CONSTANT, "factor": CHORDAL_MULTICUT_FACTOR,
                 "nice_modulus": g.n}
    if not inst.pairs:
        return _certificate("multicut-chordal", inst, set(), Fraction(0),
                            CHORDAL_MULTICUT_FACTOR, constants, {}, [])
    lp_res = multicut_lp(inst, max_rows)
    y = lp_res.x
    fopt = lp_res.weight
    modulus = g.n
    x_nice = nicify(g, y, modulus)
    assert all(modulus % v.denominator == 0 for v in x_nice)
    w_nice = fs_weight(g.weights, x_nice)
    if w_nice > 4 * fopt:
        raise CertificateViolation("nicify exceeded its 4x budget")
    strip = strip_high(g, x_nice, 1 / c)
    residual, back, x_res = strip.residual, strip.back, strip.x
    # per-component root: lowest vertex of the lexicographically first bag
    bins: list[set[int]] = [set() for _ in range(modulus + 1)]
    d: list[Optional[Fraction]] = [None] * residual.n
    for comp in connected_components(residual):
        sub, sub_back = induced_subgraph(residual, comp)
        forest = build_clique_forest(sub)
        root_bag = min(forest.bags)
        root = sub_back[min(root_bag)]
        dist = vertex_weighted_distances(residual, x_res, root)
        for v in comp:
            d[v] = dist[v]
    for v in range(residual.n):
        dv = d[v]
        assert dv is not None
        base = dv - x_res[v]
        for i in range(modulus + 1):
            target = Fraction(i, modulus)
            # membership: exists j >= 0 with base < (i/n + 2j)/c <= dv
            j = 0
            while True:
                probe = (target + 2 * j) / c
                if probe > dv:
                    break
                if probe > base:
                    bins[i].add(v)
                    break
                j += 1
    bin_weights = [residual.weight(b) for b in bins]
    best_i = min(range(modulus + 1), key=lambda i: (bin_weights[i], i))
    if bin_weights[best_i] > c * fs_weight(residual.weights, x_res):
        raise CertificateViolation("no bin within the c * w(x) budget")
    solution = set(strip.removed) | {back[v] for v in bins[best_i]}
    weight = g.weight(solution)
    if weight > CHORDAL_MULTICUT_FACTOR * fopt:
        raise CertificateViolation("chordal multicut exceeded 4c * fopt")
    breakdown = {"high_value": g.weight(strip.removed),
                 "bin": g.weight(solution) - g.weight(strip.removed)}
    flags = [] if lp_res.separation_complete else ["lp-separation-incomplete"]
    return _certificate("multicut-chordal", inst, solution, fopt,
                        CHORDAL_MULTICUT_FACTOR, constants, breakdown, flags)


def solve_multicut_general(inst: MulticutInstance,
                           max_rows: Optional[int] = None) -> DeletionCertificate:
    """Region-growing rounding around LP ball distances; the recorded factor
    is 4 ln(k+1) for k terminal pairs, asserted per run."""
    g = inst.graph
    k = len(inst.pairs)
    if k == 0:
        return _certificate("multicut-general", inst, set(), Fraction(0),
                            0.0, {"k": 0}, {}, [])
    lp_res = multicut_lp(inst, max_rows)
    y = lp_res.x
    fopt = lp_res.weight
    factor = 4.0 * math.log(k + 1)
    constants = {"k": k, "factor": round(factor, 6)}
    if fopt == 0:
        solution: set[int] = set()
        assert verify_multicut(inst, solution)
        return _certificate("multicut-general", inst, solution, fopt,
                            factor, constants, {}, [])
    lam = Fraction(int(2 * math.log(k + 1) * 2**20) + 1, 2**20)
    seed = fopt / k
    solution = set()
    alive = list(range(g.n))
    for s, t in inst.pairs:
        sub, back = induced_subgraph(g, [v for v in alive if v not in solution])
        pos = {h: i for i, h in enumerate(back)}
        if s in solution or t in solution or s not in pos or t not in pos:
            continue
        y_sub = fs_restrict(y, back)
        dist = vertex_weighted_distances(sub, y_sub, pos[s])
        comp = component_index(sub)
        if comp[pos[s]] != comp[pos[t]]:
            continue
        half = Fraction(1, 2)
        points = {half}
        for v in range(sub.n):
            dv = dist[v]
            if dv is None:
                continue
            if 0 < dv <= half:
                points.add(dv)
            low = dv - y_sub[v]
            if 0 < low <= half:
                points.add(low)
        breaks = sorted(points)
        # minimize cut weight / sup-volume over the radius intervals; the
        # actual radius is the interval midpoint so no quantity ties with it
        best: Optional[tuple] = None
        prev = Fraction(0)
        for b in breaks:
            mid = (prev + b) / 2
            cut = [v for v in range(sub.n)
                   if dist[v] is not None and dist[v] - y_sub[v] < mid <= dist[v]]
            inner_mass = sum((sub.weights[v] * y_sub[v] for v in range(sub.n)
                              if dist[v] is not None and dist[v] <= prev), Fraction(0))
            partial = sum((sub.weights[v] * (b - (dist[v] - y_sub[v]))
                           for v in cut), Fraction(0))
            vol_sup = seed + inner_mass + partial
            cut_w = sub.weight(cut)
            if best is None or cut_w * best[2] < best[1] * vol_sup:
                best = (mid, cut_w, vol_sup, cut)
            prev = b
        assert best is not None
        radius, cut_w, vol_sup, cut = best
        if cut_w > lam * vol_sup:
            raise CertificateViolation("region growing found no light radius")
        ball = {v for v in range(sub.n)
                if dist[v] is not None and dist[v] <= radius}
        solution.update(back[v] for v in cut)
        alive = [v for v in alive
                 if v not in solution and v not in {back[u] for u in ball | set(cut)}]
    weight = g.weight(solution)
    bound = 2 * lam * fopt
    if weight > bound:
        raise CertificateViolation("region growing exceeded 4 ln(k+1) fopt")
    flags = [] if lp_res.separation_complete else ["lp-separation-incomplete"]
    return _certificate("multicut-general", inst, solution, fopt, factor,
                        constants, {"regions": weight}, flags)
