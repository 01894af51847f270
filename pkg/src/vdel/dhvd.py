"""Weighted distance-hereditary vertex deletion: the biclique+DH special
case and its divide-and-conquer wrapper.

The special case mirrors the chordal one with three twists: the balancing
structure M is the cross biclique of a rank-width-one tree edge chosen to
balance the LP support, alpha counts the support of the fractional solution
inside the DH part rather than an independence number, and the side multicuts
run the general region-growing rounding (the sides are DH, not chordal).
The working log threshold L is floored at 12: the biclique rescale
(1 + 4/L)(1 - 3/L) >= 1 needs L >= 12, which the paper gets from assuming
n >= 2^12; the floor keeps the transform feasibility exact at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .badcycles import route_bad_cycles
from .certificates import CertificateViolation, DeletionCertificate
from .cvd import log2_upper
from .dh import (Biclique, DHObstruction, balancing_rw1_cut,
                 enumerate_maximal_bicliques, enumerate_small_obstructions,
                 find_obstruction, is_distance_hereditary_with_witness,
                 rankwidth1_decomposition)
from .exact import exact_by_branching
from .graph import Graph, GraphError, induced_subgraph
from .lp import (FractionalSolution, OracleAnswer, fs_restrict, fs_sum,
                 fs_weight, solve_cover_lp, strip_high, zero_out_structure)
from .multicut import MulticutInstance, solve_multicut_general
from .separators import SeparatorConfig, biclique_plus_separator


@dataclass
class DhvdConfig:
    obstruction_size: int = 8        # hitting-set threshold (paper: 50)
    hole_budget: int = 400_000
    lp_max_rows: Optional[int] = None
    claimed_constant: int = 32       # D' in w(S) <= D' lg^3 n lp + L' hit
    log_floor: int = 12              # floor on the 1/log n threshold value
    separator: SeparatorConfig = field(default_factory=SeparatorConfig)
    strict: bool = False


def log_threshold(n: int, floor: int = 12) -> Fraction:
    """The working value of 'log n': ceil(lg n) floored at `floor` (>= 12
    keeps the biclique zero-out rescale feasibility exact)."""
    lg = max((max(n, 2) - 1).bit_length(), 1)
    return Fraction(max(floor, lg))


@dataclass
class BicliqueDHInstance:
    graph: Graph
    c_part1: list[int]
    c_part2: list[int]
    x: FractionalSolution
    depth: int

    def c_all(self) -> list[int]:
        return sorted(self.c_part1 + self.c_part2)

    def hpart(self) -> list[int]:
        cs = set(self.c_all())
        return [v for v in range(self.graph.n) if v not in cs]


def alpha_dh(inst: BicliqueDHInstance) -> int:
    """Support size of x inside the DH part (not an independence number)."""
    return sum(1 for v in inst.hpart() if inst.x[v] > 0)


def obstruction_oracle(cfg: DhvdConfig):
    """Separation for the DH-obstruction cover LP: an obstruction among the
    zero-valued vertices is maximally violated; otherwise scan the small
    patterns for a violated one and finish with a bounded hole search."""

    def oracle(g: Graph, x: FractionalSolution) -> OracleAnswer:
        zero = [v for v in range(g.n) if x[v] == 0]
        if zero:
            sub, back = induced_subgraph(g, zero)
            res = is_distance_hereditary_with_witness(sub)
            if not res.is_dh:
                assert res.obstruction is not None
                return OracleAnswer(tuple(back[v] for v in res.obstruction.vertices))
        complete = True
        best: Optional[tuple[int, ...]] = None
        best_val: Optional[Fraction] = None
        try:
            small = enumerate_small_obstructions(g, 6, cfg.hole_budget)
        except GraphError:
            small = []
            complete = False
        for obs in small:
            val = fs_sum(x, obs.vertices)
            if val < 1 and (best_val is None or val < best_val):
                best, best_val = tuple(sorted(obs.vertices)), val
        from .chordal import min_weight_hole
        found = min_weight_hole(g, x, min_len=5, bound=Fraction(1),
                                budget=cfg.hole_budget)
        complete = complete and found.complete
        if found.hole is not None and found.value is not None and (
                best_val is None or found.value < best_val):
            best, best_val = found.hole, found.value
        if best is not None and best_val is not None and best_val < 1:
            return OracleAnswer(best, complete)
        return OracleAnswer(None, complete)

    return oracle


def _exact_dhvd(g: Graph, budget: int = 4_000_000) -> list[int]:
    def finder(sub: Graph):
        obs = find_obstruction(sub)
        return None if obs is None else tuple(sorted(obs.vertices))

    _, sol = exact_by_branching(g, finder, budget)
    return sol


def hit_small_obstructions(g: Graph, max_size: int, budget: int = 400_000,
                           max_rows: Optional[int] = None,
                           ) -> tuple[list[int], Graph, list[int], Fraction]:
    """LP-and-round cover of all DH-obstructions on <= max_size vertices."""
    obstructions = enumerate_small_obstructions(g, max_size, budget)
    if not obstructions:
        return [], g, list(range(g.n)), Fraction(0)
    rows = sorted({tuple(sorted(o.vertices)) for o in obstructions})

    def oracle(gg: Graph, x: FractionalSolution) -> OracleAnswer:
        best = None
        best_val = None
        for r in rows:
            val = fs_sum(x, r)
            if val < 1 and (best_val is None or val < best_val):
                best, best_val = r, val
        return OracleAnswer(best)

    res = solve_cover_lp(g, oracle, max_rows or max(10 * g.n, 4 * len(rows)))
    threshold = Fraction(1, max_size)
    removed = sorted(v for v in range(g.n) if res.x[v] >= threshold)
    rset = set(removed)
    for r in rows:
        assert any(v in rset for v in r), "rounding missed a small obstruction"
    residual, back = induced_subgraph(g, [v for v in range(g.n) if v not in rset])
    assert g.weight(removed) <= max_size * res.weight
    return removed, residual, back, res.weight


@dataclass
class _Context:
    logval: Fraction
    cfg: DhvdConfig
    depth_limit: int
    charge: int
    flags: list[str] = field(default_factory=list)
    max_depth_seen: int = 0
    exact_fallback_weight: Fraction = Fraction(0)
    multicut_weight: Fraction = Fraction(0)
    strip_weight: Fraction = Fraction(0)


def _check_entry_invariants(inst: BicliqueDHInstance, ctx: _Context) -> None:
    g = inst.graph
    for a in inst.c_part1:
        for b in inst.c_part2:
            if not g.has_edge(a, b):
                raise CertificateViolation("special case: C is not cross-complete")
    if set(inst.c_part1) & set(inst.c_part2):
        raise CertificateViolation("special case: C parts overlap")
    h, _ = induced_subgraph(g, inst.hpart())
    if not is_distance_hereditary_with_witness(h).is_dh:
        raise CertificateViolation("special case: H' is not distance hereditary")
    for v in inst.c_all():
        if inst.x[v] != 0:
            raise CertificateViolation("zero-biclique invariant violated")
    cap = 1 / ctx.logval
    for v in range(g.n):
        if inst.x[v] >= cap:
            raise CertificateViolation("low-value invariant violated")


def solve_dhvd_biclique_dh(inst: BicliqueDHInstance, ctx: _Context) -> list[int]:
    """One recursive call of the biclique+DH special case (local indices)."""
    g = inst.graph
    ctx.max_depth_seen = max(ctx.max_depth_seen, inst.depth)
    if inst.depth > ctx.depth_limit:
        raise CertificateViolation("special-case recursion exceeded its depth bound")
    _check_entry_invariants(inst, ctx)
    if is_distance_hereditary_with_witness(g).is_dh:
        return []
    alpha = alpha_dh(inst)
    if alpha <= ctx.logval:
        # the termination lemma says this graph should have been DH; the
        # fractional solution must be infeasible somewhere
        ctx.flags.append("defect:termination-mismatch")
        sol = _exact_dhvd(g)
        ctx.exact_fallback_weight += g.weight(sol)
        return sol
    hverts = inst.hpart()
    h, hback = induced_subgraph(g, hverts)
    dec = rankwidth1_decomposition(h)
    support = {i: (1 if inst.x[hv] > 0 else 0) for i, hv in enumerate(hback)}
    cut = balancing_rw1_cut(h, dec, weights=support)
    m1 = sorted(hback[v] for v in cut.m1)
    m2 = sorted(hback[v] for v in cut.m2)
    m_set = sorted(m1 + m2)
    side1 = sorted(hback[v] for v in cut.side1)
    side2 = sorted(hback[v] for v in cut.side2)
    x_star = zero_out_structure(g, inst.x, m_set, "biclique",
                                biclique_parts=(set(m1), set(m2)),
                                log_value=ctx.logval)
    strip = strip_high(g, x_star, 1 / ctx.logval)
    ctx.strip_weight += g.weight(strip.removed)
    stripped = set(strip.removed)
    pos = {hv: i for i, hv in enumerate(strip.back)}
    res_g, res_x = strip.residual, strip.x
    c1_res = sorted(pos[v] for v in inst.c_part1 if v not in stripped)
    c2_res = sorted(pos[v] for v in inst.c_part2 if v not in stripped)
    c_res = sorted(c1_res + c2_res)
    m_res = sorted(pos[v] for v in m_set if v not in stripped)
    sides_res = [sorted(pos[v] for v in side1 if v not in stripped),
                 sorted(pos[v] for v in side2 if v not in stripped)]
    solution = set(strip.removed)

    child_weights = []
    child_alphas = []
    for side in sides_res:
        verts = sorted(set(side) | set(m_res) | set(c_res))
        gi, gi_back = induced_subgraph(res_g, verts)
        xi = fs_restrict(res_x, gi_back)
        lpos = {hv: i for i, hv in enumerate(gi_back)}
        child = BicliqueDHInstance(
            gi,
            sorted(lpos[v] for v in c1_res if v in lpos),
            sorted(lpos[v] for v in c2_res if v in lpos),
            xi, inst.depth + 1)
        child_alphas.append(alpha_dh(child))
        child_weights.append(fs_weight(gi.weights, xi))
        sub_sol = solve_dhvd_biclique_dh(child, ctx)
        solution.update(strip.back[gi_back[v]] for v in sub_sol)
    total = fs_weight(res_g.weights, res_x)
    if child_weights[0] + child_weights[1] != total:
        raise CertificateViolation("fractional weight additivity violated")
    for ca in child_alphas:
        if 4 * ca > 3 * alpha:
            raise CertificateViolation("alpha decay above 3/4")

    side_vertex_sets = [sorted(set(s) - set(m_res) - set(c_res))
                        for s in sides_res]
    side_graphs = [induced_subgraph(res_g, vs) for vs in side_vertex_sets]
    cuts = route_bad_cycles(res_g, res_x, c_res, m_res, side_graphs,
                            side_vertex_sets)
    if not cuts.resolved:
        ctx.flags.append("defect:no-separating-side")
        sol = _exact_dhvd(g)
        ctx.exact_fallback_weight += g.weight(sol)
        return sol
    solution.update(strip.back[v] for v in cuts.forced)
    for i in (0, 1):
        gi_hat, gi_hat_back = side_graphs[i]
        forced_local = {v for v in range(gi_hat.n) if gi_hat_back[v] in cuts.forced}
        keep = [v for v in range(gi_hat.n) if v not in forced_local]
        mc_g, mc_back = induced_subgraph(gi_hat, keep)
        mc_pos = {hv: j for j, hv in enumerate(mc_back)}
        pairs = sorted({(mc_pos[a], mc_pos[b]) for a, b in cuts.side_pairs[i]
                        if a in mc_pos and b in mc_pos})
        if not pairs:
            continue
        cert = solve_multicut_general(MulticutInstance.make(mc_g, pairs),
                                      ctx.cfg.lp_max_rows)
        ctx.multicut_weight += cert.weight
        solution.update(strip.back[gi_hat_back[mc_back[v]]] for v in cert.solution)
    sol = sorted(solution)
    logv = ctx.logval
    bound = ((logv / (logv + 4)) ** max(inst.depth - 1, 0) * ctx.charge
             * log2_upper(max(g.n, 2)) * log2_upper(max(alpha, 2))
             * fs_weight(g.weights, inst.x))
    if g.weight(sol) > bound:
        ctx.flags.append("special-lemma-bound-miss")
    return sol


def repair_obstructions(g: Graph, s) -> list[int]:
    """Safety net mirroring the chordal repair; any use is a defect."""
    out = set(s)
    while True:
        sub, back = induced_subgraph(g, [v for v in range(g.n) if v not in out])
        obs = find_obstruction(sub)
        if obs is None:
            return sorted(out)
        out.add(min((back[v] for v in obs.vertices),
                    key=lambda h: (g.weights[h], h)))


def _special_from_scratch(g: Graph, biclique: Biclique, ctx: _Context,
                          cfg: DhvdConfig,
                          retained_x: Optional[FractionalSolution]) -> list[int]:
    if is_distance_hereditary_with_witness(g).is_dh:
        return []
    if retained_x is None:
        lp_res = solve_cover_lp(g, obstruction_oracle(cfg), cfg.lp_max_rows)
        if not lp_res.separation_complete:
            ctx.flags.append("lp-separation-incomplete")
        x = lp_res.x
    else:
        x = retained_x
    strip = strip_high(g, x, 1 / ctx.logval)
    ctx.strip_weight += g.weight(strip.removed)
    solution = set(strip.removed)
    res_g, res_x, back = strip.residual, strip.x, strip.back
    pos = {hv: i for i, hv in enumerate(back)}
    c1 = sorted(pos[v] for v in biclique.part1 if v in pos)
    c2 = sorted(pos[v] for v in biclique.part2 if v in pos)
    x0 = zero_out_structure(res_g, res_x, c1 + c2, "biclique",
                            biclique_parts=(set(c1), set(c2)),
                            log_value=ctx.logval)
    inst = BicliqueDHInstance(res_g, c1, c2, x0, 1)
    sub_sol = solve_dhvd_biclique_dh(inst, ctx)
    solution.update(back[v] for v in sub_sol)
    return sorted(solution)


def _find_biclique_dh_split(g: Graph, cfg: DhvdConfig) -> Optional[Biclique]:
    try:
        bicliques = enumerate_maximal_bicliques(g, cfg.separator.biclique_budget)
    except GraphError:
        return None
    for b in bicliques:
        rest = [v for v in range(g.n) if v not in set(b.vertices())]
        sub, _ = induced_subgraph(g, rest)
        if is_distance_hereditary_with_witness(sub).is_dh:
            return b
    return None


def _gen_dhvd(g: Graph, ctx: _Context, cfg: DhvdConfig,
              breakdown: dict) -> list[int]:
    if g.n == 0:
        return []
    if is_distance_hereditary_with_witness(g).is_dh:
        return []
    split = _find_biclique_dh_split(g, cfg)
    if split is not None:
        sol = _special_from_scratch(g, split, ctx, cfg, None)
        breakdown["special"] = breakdown.get("special", Fraction(0)) + g.weight(sol)
        return sol
    ss = biclique_plus_separator(g, cfg.separator)
    breakdown["separators"] = breakdown.get("separators", Fraction(0)) \
        + ss.separator_weight
    solution = set(ss.separator)
    kept: list[int] = []
    for side in (ss.side1, ss.side2):
        sub, back = induced_subgraph(g, side)
        sub_sol = _gen_dhvd(sub, ctx, cfg, breakdown)
        solution.update(back[v] for v in sub_sol)
        kept.extend(v for v in side if v not in {back[u] for u in sub_sol})
    if not ss.structure:
        return sorted(solution)
    # rejoin the biclique: the remainder is a biclique + DH special instance;
    # reuse the fractional solution of this level's LP, restricted
    lp_res = solve_cover_lp(g, obstruction_oracle(cfg), cfg.lp_max_rows)
    if not lp_res.separation_complete:
        ctx.flags.append("lp-separation-incomplete")
    j_verts = sorted(set(kept) | set(ss.structure))
    sub, back = induced_subgraph(g, j_verts)
    retained = fs_restrict(lp_res.x, back)
    pos = {hv: i for i, hv in enumerate(back)}
    bic = ss.biclique
    if bic is None:
        ctx.flags.append("defect:no-biclique-in-join")
        sub_sol = _exact_dhvd(sub)
        ctx.exact_fallback_weight += sub.weight(sub_sol)
    else:
        local = Biclique.of([pos[v] for v in bic.part1],
                            [pos[v] for v in bic.part2])
        sub_sol = _special_from_scratch(sub, local, ctx, cfg, retained)
        breakdown["special"] = breakdown.get("special", Fraction(0)) \
            + sub.weight(sub_sol)
    solution.update(back[v] for v in sub_sol)
    return sorted(solution)


def charge_constant_dh(n: int, logval: Fraction) -> int:
    """Per-call charging constant sized against the general multicut factor
    (4 ln(k+1) <= 4 ln(n^2+1)) and the support decay depth."""
    depth = max(1, math.ceil(math.log(max(n, 2) / 2) / math.log(4 / 3))) + 1
    d_cap = 4.0 * math.log(float(max(n, 2)) ** 2 + 1) / math.log2(max(n, 2))
    decay = float((logval / (logval + 4)) ** depth)
    return max(32, math.ceil(2 * d_cap / (decay * math.log2(4 / 3))))


def solve_dhvd(g: Graph, cfg: Optional[DhvdConfig] = None) -> DeletionCertificate:
    """O(log^3 n)-style distance-hereditary deletion with a run certificate."""
    cfg = cfg or DhvdConfig()
    if cfg.obstruction_size < 6:
        raise GraphError("obstruction size below 6 breaks the biclique bound")
    zero_w = sorted(v for v in range(g.n) if g.weights[v] == 0)
    work, back0 = induced_subgraph(
        g, [v for v in range(g.n) if v not in set(zero_w)])
    removed_small, g0, back1, hit_lp = hit_small_obstructions(
        work, cfg.obstruction_size, cfg.hole_budget, cfg.lp_max_rows)
    lp0 = solve_cover_lp(g0, obstruction_oracle(cfg), cfg.lp_max_rows)
    logval = log_threshold(g0.n, cfg.log_floor)
    ctx = _Context(logval=logval, cfg=cfg,
                   depth_limit=max(2, math.ceil(
                       math.log(max(g0.n, 2)) / math.log(4 / 3)) + 2),
                   charge=charge_constant_dh(g0.n, logval))
    if not lp0.separation_complete:
        ctx.flags.append("lp-separation-incomplete")
    breakdown: dict = {}
    core_sol = _gen_dhvd(g0, ctx, cfg, breakdown)
    solution = set(zero_w)
    solution.update(back0[back1[v]] for v in core_sol)
    solution.update(back0[v] for v in removed_small)
    residual, _ = induced_subgraph(g, [v for v in range(g.n)
                                       if v not in solution])
    if not is_distance_hereditary_with_witness(residual).is_dh:
        ctx.flags.append("defect:repair-fired")
        solution = set(repair_obstructions(g, sorted(solution)))
    breakdown["zero_weight"] = g.weight(zero_w)
    breakdown["hitting"] = work.weight(removed_small)
    breakdown["multicut"] = ctx.multicut_weight
    breakdown["strip"] = ctx.strip_weight
    breakdown["exact_fallback"] = ctx.exact_fallback_weight
    lg = max(1.0, math.log2(max(g.n, 2)))
    cert = DeletionCertificate(
        problem="dhvd",
        solution=sorted(solution),
        weight=g.weight(solution),
        lower_bound=lp0.weight,
        hitting_lower_bound=hit_lp,
        claimed_factor=cfg.claimed_constant * lg ** 3,
        hitting_factor=float(cfg.obstruction_size),
        constants={"D": cfg.claimed_constant, "L": cfg.obstruction_size,
                   "log_threshold": str(logval), "charge": ctx.charge,
                   "max_depth": ctx.max_depth_seen},
        breakdown=breakdown,
        flags=sorted(set(ctx.flags)),
    )
    final_res, _ = induced_subgraph(g, [v for v in range(g.n)
                                        if v not in set(cert.solution)])
    if not is_distance_hereditary_with_witness(final_res).is_dh:
        raise CertificateViolation("dhvd output is not distance hereditary")
    if cfg.strict and any(f.startswith("defect:") for f in cert.flags):
        raise CertificateViolation(f"strict mode: defect flags {cert.flags}")
    if not cert.check():
        cert.flags.append("certificate-bound-miss")
        if cfg.strict:
            raise CertificateViolation("strict mode: certificate bound missed")
    return cert
