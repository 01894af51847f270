"""Weighted chordal vertex deletion: the clique+chordal special case driven
by an LP in a controlled form, and the general divide-and-conquer wrapper.

The special case keeps a fractional hole-cover solution that is zero on the
clique and pointwise tiny (below roughly 1/Lambda); each level zeroes out a
balancing maximal clique of the chordal part, strips newly-high values into
the solution, recurses on the two sides, and kills the cycles spanning both
sides with chordal multicut instances built from clique-pair terminals.
Lambda is sized so the level-by-level charging argument goes through with the
multicut factor of 32; every structural invariant is asserted at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .badcycles import route_bad_cycles
from .certificates import CertificateViolation, DeletionCertificate
from .chordal import (build_clique_forest, enumerate_maximal_cliques,
                      enumerate_short_holes, find_any_hole,
                      is_chordal_with_witness, min_weight_hole)
from .exact import exact_by_branching
from .graph import Graph, GraphError, connected_components, induced_subgraph
from .lp import (FractionalSolution, OracleAnswer, fs_restrict, fs_sum,
                 fs_weight, solve_cover_lp, strip_high, zero_out_structure)
from .multicut import MulticutInstance, solve_multicut_chordal
from .separators import SeparatorConfig, clique_plus_separator


def log2_upper(value) -> Fraction:
    """Rational upper bound on log2(value), exact at powers of two."""
    v = Fraction(value)
    if v <= 1:
        return Fraction(1)
    num, den = v.numerator, v.denominator
    if den == 1 and num & (num - 1) == 0:
        return Fraction(num.bit_length() - 1)
    return Fraction(int(math.log2(float(v)) * 2**20) + 1, 2**20)


LG43_LOWER = Fraction(83, 200)       # safe lower bound on log2(4/3)


@dataclass
class CvdConfig:
    short_hole_len: int = 12
    alpha_exact: int = 24            # special case goes exact below this
    hole_budget: int = 400_000       # DFS nodes for enumeration/separation
    lp_max_rows: Optional[int] = None
    claimed_constant: int = 32       # D in the w(S) <= D lg^2 n lp + L hit claim
    lam_override: Optional[int] = None
    separator: SeparatorConfig = field(default_factory=SeparatorConfig)
    strict: bool = False


def charge_constant(alpha0: int, override: Optional[int] = None) -> int:
    """Smallest Lambda making the level charging viable: the recursion depth
    is at most Delta (3/4 decay of the independence number down to 24), and
    the multicut term needs 64 <= (Lambda/(Lambda+9))^Delta Lambda lg(4/3)."""
    if override is not None:
        return override
    depth = max(1, math.ceil(math.log(max(alpha0, 2) / 2) / math.log(4 / 3))) + 1
    lam = max(48, 9 * depth)
    while True:
        decay = Fraction(lam, lam + 9) ** depth
        if decay * lam * LG43_LOWER >= 64:
            return lam
        lam += 1


def chordal_alpha(h: Graph) -> int:
    """Independence number of a chordal graph: greedy over the PEO."""
    res = is_chordal_with_witness(h)
    if not res.chordal:
        raise GraphError("chordal_alpha needs a chordal graph")
    assert res.peo is not None
    taken: set[int] = set()
    count = 0
    for v in res.peo:
        if not (h.adj[v] & taken):
            taken.add(v)
            count += 1
    return count


@dataclass
class CliqueChordalInstance:
    graph: Graph
    clique: list[int]                 # C, sorted
    x: FractionalSolution
    depth: int

    def hpart(self) -> list[int]:
        cs = set(self.clique)
        return [v for v in range(self.graph.n) if v not in cs]


def compute_alpha(inst: CliqueChordalInstance) -> int:
    """alpha(G') for a clique+chordal instance: an optimum independent set
    takes at most one clique vertex."""
    g = inst.graph
    hverts = inst.hpart()
    h, hback = induced_subgraph(g, hverts)
    best = chordal_alpha(h)
    hpos = {v: i for i, v in enumerate(hback)}
    for v in inst.clique:
        free = [hpos[u] for u in hverts if u not in g.adj[v]]
        sub, _ = induced_subgraph(h, free)
        best = max(best, chordal_alpha(sub) + 1)
    return best


def find_balancing_clique(h: Graph) -> Optional[tuple[list[int], list[int], list[int]]]:
    """Maximal-clique bag whose removal splits the chordal graph into two
    packed sides with independence number at most 2/3 of the whole."""
    if h.n == 0:
        return None
    alpha_h = chordal_alpha(h)
    limit = Fraction(2 * alpha_h, 3)
    forest = build_clique_forest(h)
    best: Optional[tuple] = None
    for bag in forest.bags:
        bagset = set(bag)
        rest = [v for v in range(h.n) if v not in bagset]
        sub, back = induced_subgraph(h, rest)
        comps = []
        ok = True
        for comp in connected_components(sub):
            csub, _ = induced_subgraph(sub, comp)
            a = chordal_alpha(csub)
            if a > limit:
                ok = False
                break
            comps.append((a, [back[v] for v in comp]))
        if not ok:
            continue
        sides: tuple[list[int], list[int]] = ([], [])
        loads = [0, 0]
        for a, verts in sorted(comps, key=lambda t: (-t[0], t[1])):
            i = 0 if loads[0] <= loads[1] else 1
            sides[i].extend(verts)
            loads[i] += a
        if max(loads) > limit:
            continue
        key = (max(loads), bag)
        if best is None or key < best[0]:
            best = (key, list(bag), sorted(sides[0]), sorted(sides[1]))
    if best is None:
        return None
    return best[1], best[2], best[3]


@dataclass
class _Context:
    """Per-run bookkeeping shared by all recursive calls."""
    lam: int
    cfg: CvdConfig
    alpha0: int
    depth_limit: int
    flags: list[str] = field(default_factory=list)
    max_depth_seen: int = 0
    exact_fallback_weight: Fraction = Fraction(0)
    multicut_weight: Fraction = Fraction(0)
    strip_weight: Fraction = Fraction(0)


def hole_oracle(cfg: CvdConfig, min_len: int = 4):
    """Separation oracle for the hole-cover LP: a hole inside the zero-value
    region is maximally violated and found in polynomial time; otherwise an
    exhaustive bounded-weight hole search settles feasibility."""

    def oracle(g: Graph, x: FractionalSolution) -> OracleAnswer:
        zero = [v for v in range(g.n) if x[v] == 0]
        if zero:
            sub, back = induced_subgraph(g, zero)
            res = is_chordal_with_witness(sub)
            if not res.chordal and res.hole is not None and len(res.hole) >= min_len:
                return OracleAnswer(tuple(back[v] for v in res.hole))
        found = min_weight_hole(g, x, min_len=min_len, bound=Fraction(1),
                                budget=cfg.hole_budget)
        if found.hole is not None and found.value is not None and found.value < 1:
            return OracleAnswer(found.hole, found.complete)
        return OracleAnswer(None, found.complete)

    return oracle


def _exact_cvd(g: Graph, budget: int = 4_000_000) -> list[int]:
    """Exact minimum-weight hole hitting set by obstruction branching."""

    def finder(sub: Graph) -> Optional[tuple[int, ...]]:
        return find_any_hole(sub)

    _, sol = exact_by_branching(g, finder, budget)
    return sol


def hit_short_holes(g: Graph, max_len: int, budget: int = 400_000,
                    max_rows: Optional[int] = None,
                    ) -> tuple[list[int], Graph, list[int], Fraction]:
    """LP-and-round cover of the holes of length <= max_len: solve the cover
    LP restricted to the enumerated holes, take every vertex at or above
    1/max_len.  Returns (removed, residual, back-map, LP bound)."""
    holes = enumerate_short_holes(g, max_len, budget)
    if not holes:
        back = list(range(g.n))
        return [], g, back, Fraction(0)
    hole_list = [tuple(h) for h in holes]

    def oracle(gg: Graph, x: FractionalSolution) -> OracleAnswer:
        best = None
        best_val = None
        for h in hole_list:
            val = fs_sum(x, h)
            if val < 1 and (best_val is None or val < best_val):
                best, best_val = h, val
        return OracleAnswer(best)

    res = solve_cover_lp(g, oracle, max_rows or max(10 * g.n, 4 * len(hole_list)))
    threshold = Fraction(1, max_len)
    removed = sorted(v for v in range(g.n) if res.x[v] >= threshold)
    for h in hole_list:
        assert any(v in set(removed) for v in h), "rounding missed a short hole"
    residual, back = induced_subgraph(
        g, [v for v in range(g.n) if v not in set(removed)])
    assert g.weight(removed) <= max_len * res.weight
    return removed, residual, back, res.weight


def _check_entry_invariants(inst: CliqueChordalInstance, ctx: _Context) -> None:
    g = inst.graph
    if not g.is_clique(inst.clique):
        raise CertificateViolation("special case: C is not a clique")
    h, _ = induced_subgraph(g, inst.hpart())
    hres = is_chordal_with_witness(h)
    if not hres.chordal:
        raise CertificateViolation("special case: H' is not chordal")
    for v in inst.clique:
        if inst.x[v] != 0:
            raise CertificateViolation("zero-clique invariant violated")
    lam = Fraction(ctx.lam)
    cap = ((lam + 9) / lam) ** inst.depth / lam
    for v in range(g.n):
        if inst.x[v] >= cap:
            raise CertificateViolation("low-value invariant violated")


def solve_cvd_clique_chordal(inst: CliqueChordalInstance,
                             ctx: _Context) -> list[int]:
    """One recursive call of the special case; returns host-local vertices."""
    g = inst.graph
    ctx.max_depth_seen = max(ctx.max_depth_seen, inst.depth)
    if inst.depth > ctx.depth_limit:
        raise CertificateViolation("special-case recursion exceeded its depth bound")
    _check_entry_invariants(inst, ctx)
    if is_chordal_with_witness(g).chordal:
        return []
    alpha = compute_alpha(inst)
    if alpha < ctx.cfg.alpha_exact:
        sol = _exact_cvd(g)
        ctx.exact_fallback_weight += g.weight(sol)
        return sol
    hverts = inst.hpart()
    h, hback = induced_subgraph(g, hverts)
    bal = find_balancing_clique(h)
    if bal is None:
        ctx.flags.append("defect:no-balancing-clique")
        return _exact_cvd(g)
    m_local, side1_local, side2_local = bal
    m_set = sorted(hback[v] for v in m_local)
    side1 = sorted(hback[v] for v in side1_local)
    side2 = sorted(hback[v] for v in side2_local)
    x_star = zero_out_structure(g, inst.x, m_set, "clique")
    strip = strip_high(g, x_star, Fraction(1, ctx.lam))
    ctx.strip_weight += g.weight(strip.removed)
    stripped = set(strip.removed)
    pos = {h: i for i, h in enumerate(strip.back)}
    res_g, res_x = strip.residual, strip.x
    c_res = sorted(pos[v] for v in inst.clique if v not in stripped)
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
        ci = sorted(i for i, hv in enumerate(gi_back) if hv in set(c_res))
        child = CliqueChordalInstance(gi, ci, xi, inst.depth + 1)
        child_alphas.append(compute_alpha(child))
        child_weights.append(fs_weight(gi.weights, xi))
        sub_sol = solve_cvd_clique_chordal(child, ctx)
        solution.update(strip.back[gi_back[v]] for v in sub_sol)
    # exact additivity: x* vanishes on C and M, the only shared vertices
    total = fs_weight(res_g.weights, res_x)
    if child_weights[0] + child_weights[1] != total:
        raise CertificateViolation("fractional weight additivity violated")
    for ca in child_alphas:
        if 4 * ca > 3 * alpha:
            raise CertificateViolation("alpha decay above 3/4")

    # bad cycles: multicut between clique-pair attachment terminals
    side_vertex_sets = [sorted(set(s) - set(m_res) - set(c_res))
                        for s in sides_res]
    side_graphs = [induced_subgraph(res_g, vs) for vs in side_vertex_sets]
    cuts = route_bad_cycles(res_g, res_x, c_res, m_res, side_graphs,
                            side_vertex_sets)
    if not cuts.resolved:
        ctx.flags.append("defect:no-separating-side")
        sol = _exact_cvd(g)
        ctx.exact_fallback_weight += g.weight(sol)
        return sol
    solution.update(strip.back[v] for v in cuts.forced)
    for i in (0, 1):
        gi_hat, gi_hat_back = side_graphs[i]
        forced_local = {v for v in range(gi_hat.n) if gi_hat_back[v] in cuts.forced}
        keep = [v for v in range(gi_hat.n) if v not in forced_local]
        mc_g, mc_back = induced_subgraph(gi_hat, keep)
        mc_pos = {h: j for j, h in enumerate(mc_back)}
        pairs = sorted({(mc_pos[a], mc_pos[b]) for a, b in cuts.side_pairs[i]
                        if a in mc_pos and b in mc_pos})
        if not pairs:
            continue
        cert = solve_multicut_chordal(MulticutInstance.make(mc_g, pairs),
                                      ctx.cfg.lp_max_rows)
        ctx.multicut_weight += cert.weight
        solution.update(strip.back[gi_hat_back[mc_back[v]]] for v in cert.solution)
    sol = sorted(solution)
    # lemma-form certificate for this call, with rational-upper logs
    lam = Fraction(ctx.lam)
    bound = ((lam / (lam + 9)) ** max(inst.depth - 1, 0) * lam
             * log2_upper(max(alpha, 2)) * fs_weight(g.weights, inst.x))
    if g.weight(sol) > bound:
        ctx.flags.append("special-lemma-bound-miss")
    return sol


def repair_holes(g: Graph, s: Sequence[int]) -> list[int]:
    """Safety net: extend s until no hole remains, taking the cheapest vertex
    of each surviving hole.  Any use is a defect signal."""
    out = set(s)
    while True:
        sub, back = induced_subgraph(g, [v for v in range(g.n) if v not in out])
        hole = find_any_hole(sub)
        if hole is None:
            return sorted(out)
        out.add(min((back[v] for v in hole),
                    key=lambda h: (g.weights[h], h)))


def _special_from_scratch(g: Graph, clique: list[int], ctx: _Context,
                          cfg: CvdConfig) -> list[int]:
    """Initialize the special case: fresh LP, strip high values, zero the
    clique, then enter the recursion at depth one."""
    if is_chordal_with_witness(g).chordal:
        return []
    lp_res = solve_cover_lp(g, hole_oracle(cfg), cfg.lp_max_rows)
    if not lp_res.separation_complete:
        ctx.flags.append("lp-separation-incomplete")
    strip = strip_high(g, lp_res.x, Fraction(1, ctx.lam))
    ctx.strip_weight += g.weight(strip.removed)
    solution = set(strip.removed)
    res_g, res_x, back = strip.residual, strip.x, strip.back
    stripped = set(strip.removed)
    c_res = sorted(i for i, h in enumerate(back) if h in set(clique))
    x0 = zero_out_structure(res_g, res_x, c_res, "clique")
    inst = CliqueChordalInstance(res_g, c_res, x0, 1)
    sub_sol = solve_cvd_clique_chordal(inst, ctx)
    solution.update(back[v] for v in sub_sol)
    return sorted(solution)


def _find_clique_chordal_split(g: Graph) -> Optional[list[int]]:
    """A maximal clique whose removal leaves a chordal graph, if any."""
    for clique in enumerate_maximal_cliques(g):
        rest = [v for v in range(g.n) if v not in set(clique)]
        sub, _ = induced_subgraph(g, rest)
        if is_chordal_with_witness(sub).chordal:
            return list(clique)
    return None


def _gen_cvd(g: Graph, ctx: _Context, cfg: CvdConfig,
             breakdown: dict) -> list[int]:
    if g.n == 0:
        return []
    if is_chordal_with_witness(g).chordal:
        return []
    split = _find_clique_chordal_split(g)
    if split is not None:
        sol = _special_from_scratch(g, split, ctx, cfg)
        breakdown["special"] = breakdown.get("special", Fraction(0)) + g.weight(sol)
        return sol
    ss = clique_plus_separator(g, cfg.separator)
    breakdown["separators"] = breakdown.get("separators", Fraction(0)) \
        + ss.separator_weight
    solution = set(ss.separator)
    kept: list[int] = []
    for side in (ss.side1, ss.side2):
        sub, back = induced_subgraph(g, side)
        sub_sol = _gen_cvd(sub, ctx, cfg, breakdown)
        solution.update(back[v] for v in sub_sol)
        kept.extend(v for v in side if v not in {back[u] for u in sub_sol})
    j_verts = sorted(set(kept) | set(ss.structure))
    sub, back = induced_subgraph(g, j_verts)
    struct_local = sorted(i for i, h in enumerate(back) if h in set(ss.structure))
    # the separator's clique may have lost maximality inside J; any maximal
    # extension keeps J - C chordal because the sides are chordal already
    split = _find_clique_chordal_split(sub)
    if split is None:
        ctx.flags.append("defect:no-clique-split-in-join")
        sub_sol = _exact_cvd(sub)
        ctx.exact_fallback_weight += sub.weight(sub_sol)
    else:
        sub_sol = _special_from_scratch(sub, split, ctx, cfg)
        breakdown["special"] = breakdown.get("special", Fraction(0)) \
            + sub.weight(sub_sol)
    solution.update(back[v] for v in sub_sol)
    return sorted(solution)


def solve_cvd(g: Graph, cfg: Optional[CvdConfig] = None) -> DeletionCertificate:
    """O(log^2 n)-style chordal deletion with a certified run record."""
    cfg = cfg or CvdConfig()
    zero_w = sorted(v for v in range(g.n) if g.weights[v] == 0)
    work, back0 = induced_subgraph(
        g, [v for v in range(g.n) if v not in set(zero_w)])
    removed_short, g0, back1, hit_lp = hit_short_holes(
        work, cfg.short_hole_len, cfg.hole_budget, cfg.lp_max_rows)
    lp0 = solve_cover_lp(g0, hole_oracle(cfg), cfg.lp_max_rows)
    ctx = _Context(lam=charge_constant(g0.n, cfg.lam_override), cfg=cfg,
                   alpha0=g0.n,
                   depth_limit=max(2, math.ceil(
                       math.log(max(g0.n, 2)) / math.log(4 / 3)) + 2))
    if not lp0.separation_complete:
        ctx.flags.append("lp-separation-incomplete")
    breakdown: dict = {}
    core_sol = _gen_cvd(g0, ctx, cfg, breakdown)
    solution = set(zero_w)
    solution.update(back0[back1[v]] for v in core_sol)
    solution.update(back0[v] for v in removed_short)
    residual, _ = induced_subgraph(g, [v for v in range(g.n)
                                       if v not in solution])
    if not is_chordal_with_witness(residual).chordal:
        ctx.flags.append("defect:repair-fired")
        solution = set(repair_holes(g, sorted(solution)))
    breakdown["zero_weight"] = g.weight(zero_w)
    breakdown["hitting"] = work.weight(removed_short)
    breakdown["multicut"] = ctx.multicut_weight
    breakdown["strip"] = ctx.strip_weight
    breakdown["exact_fallback"] = ctx.exact_fallback_weight
    lg = max(1.0, math.log2(max(g.n, 2)))
    cert = DeletionCertificate(
        problem="cvd",
        solution=sorted(solution),
        weight=g.weight(solution),
        lower_bound=lp0.weight,
        hitting_lower_bound=hit_lp,
        claimed_factor=cfg.claimed_constant * lg * lg,
        hitting_factor=float(cfg.short_hole_len),
        constants={"D": cfg.claimed_constant, "L": cfg.short_hole_len,
                   "lambda": ctx.lam, "alpha_exact": cfg.alpha_exact,
                   "max_depth": ctx.max_depth_seen},
        breakdown=breakdown,
        flags=sorted(set(ctx.flags)),
    )
    final_res, _ = induced_subgraph(g, [v for v in range(g.n)
                                        if v not in set(cert.solution)])
    if not is_chordal_with_witness(final_res).chordal:
        raise CertificateViolation("cvd output is not chordal after repair")
    if cfg.strict and any(f.startswith("defect:") for f in cert.flags):
        raise CertificateViolation(f"strict mode: defect flags {cert.flags}")
    if not cert.check():
        cert.flags.append("certificate-bound-miss")
        if cfg.strict:
            raise CertificateViolation("strict mode: certificate bound missed")
    return cert
