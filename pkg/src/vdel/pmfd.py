"""Weighted planar minor-free deletion for the built-in small families:
an exact special-case solver (bounded set + minor-free part) and the
divide-and-conquer wrapper over bounded-set balanced separators.

There is no LP here; certificates carry a greedy disjoint-violation packing
bound as the lower bound and make no factor claim (feasibility and the
exactness of the special case are the audited properties).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .certificates import CertificateViolation, DeletionCertificate
from .exact import exact_by_branching
from .graph import Graph, GraphError, induced_subgraph
from .minors import (FAMILIES, MinorFamily, family_violation, is_minor_free,
                     pattern_graph)
from .separators import SeparatorConfig, bounded_set_plus_separator


@dataclass
class PmfdConfig:
    special_enum_budget: int = 20000   # cap on size-(c+1) M-set enumeration
    bnb_budget: int = 4_000_000
    separator: SeparatorConfig = field(default_factory=SeparatorConfig)
    strict: bool = False


def get_family(name: str) -> MinorFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown minor family {name!r}; "
                         f"available: {sorted(FAMILIES)}") from None


def _violation_finder(family: MinorFamily):
    def finder(sub: Graph) -> Optional[tuple[int, ...]]:
        hit = family_violation(sub, family)
        if hit is None:
            return None
        _, model = hit
        return tuple(sorted(v for vs in model.values() for v in vs))

    return finder


def packing_lower_bound(g: Graph, family: MinorFamily) -> Fraction:
    """Greedy vertex-disjoint violation packing: each found model forces at
    least its cheapest vertex into any solution."""
    bound = Fraction(0)
    alive = list(range(g.n))
    while True:
        sub, back = induced_subgraph(g, alive)
        hit = family_violation(sub, family)
        if hit is None:
            return bound
        _, model = hit
        used = {back[v] for vs in model.values() for v in vs}
        bound += min(g.weights[v] for v in used)
        alive = [v for v in alive if v not in used]


def solve_pmfd_special(g: Graph, m: list[int], family: MinorFamily,
                       cfg: Optional[PmfdConfig] = None) -> tuple[Fraction, list[int]]:
    """Exact minimum-weight deletion when g - m is already minor-free and m
    has at most treewidth_bound + 1 vertices; branch-and-bound on violation
    models is exact for any input, the precondition keeps it shallow."""
    cfg = cfg or PmfdConfig()
    if len(m) > family.treewidth_bound + 1:
        raise GraphError("special case: m exceeds the treewidth bound + 1")
    rest = [v for v in range(g.n) if v not in set(m)]
    sub, _ = induced_subgraph(g, rest)
    hit = family_violation(sub, family)
    if hit is not None:
        raise GraphError(
            f"special case precondition violated: g - m has a {hit[0]} minor")
    return exact_by_branching(g, _violation_finder(family), cfg.bnb_budget)


def _find_special_m(g: Graph, family: MinorFamily,
                    cfg: PmfdConfig) -> Optional[list[int]]:
    """Some M of size <= c+1 with g - M minor-free, if the capped enumeration
    sees one.  Missing one only deepens the recursion."""
    k = family.treewidth_bound + 1
    if is_minor_free(g, family):
        return []
    for size in range(1, k + 1):
        if comb(g.n, size) <= cfg.special_enum_budget:
            pool = list(range(g.n))
        else:
            width = g.n
            while width > size and comb(width, size) > cfg.special_enum_budget:
                width -= 1
            pool = sorted(range(g.n), key=lambda v: (-g.degree(v), v))[:width]
        for m in combinations(pool, size):
            rest = [v for v in range(g.n) if v not in set(m)]
            sub, _ = induced_subgraph(g, rest)
            if is_minor_free(sub, family):
                return list(m)
    return None


def _gen_pmfd(g: Graph, family: MinorFamily, cfg: PmfdConfig,
              breakdown: dict) -> list[int]:
    if g.n == 0:
        return []
    m = _find_special_m(g, family, cfg)
    if m is not None:
        _, sol = solve_pmfd_special(g, m, family, cfg)
        breakdown["special"] = breakdown.get("special", Fraction(0)) + g.weight(sol)
        return sol
    ss = bounded_set_plus_separator(g, family.treewidth_bound + 1, cfg.separator)
    breakdown["separators"] = breakdown.get("separators", Fraction(0)) \
        + ss.separator_weight
    solution = set(ss.separator)
    kept: list[int] = []
    for side in (ss.side1, ss.side2):
        sub, back = induced_subgraph(g, side)
        sub_sol = _gen_pmfd(sub, family, cfg, breakdown)
        solution.update(back[v] for v in sub_sol)
        kept.extend(v for v in side if v not in {back[u] for u in sub_sol})
    j_verts = sorted(set(kept) | set(ss.structure))
    sub, back = induced_subgraph(g, j_verts)
    m_local = sorted(i for i, h in enumerate(back) if h in set(ss.structure))
    _, sub_sol = solve_pmfd_special(sub, m_local, family, cfg)
    breakdown["special"] = breakdown.get("special", Fraction(0)) \
        + sub.weight(sub_sol)
    solution.update(back[v] for v in sub_sol)
    return sorted(solution)


def solve_pmfd(g: Graph, family: MinorFamily,
               cfg: Optional[PmfdConfig] = None) -> DeletionCertificate:
    cfg = cfg or PmfdConfig()
    zero_w = sorted(v for v in range(g.n) if g.weights[v] == 0)
    work, back0 = induced_subgraph(
        g, [v for v in range(g.n) if v not in set(zero_w)])
    breakdown: dict = {}
    core = _gen_pmfd(work, family, cfg, breakdown)
    solution = set(zero_w) | {back0[v] for v in core}
    residual, _ = induced_subgraph(g, [v for v in range(g.n)
                                       if v not in solution])
    if not is_minor_free(residual, family):
        raise CertificateViolation("pmfd output is not minor-free")
    breakdown["zero_weight"] = g.weight(zero_w)
    lb = packing_lower_bound(g, family)
    cert = DeletionCertificate(
        problem=f"pmfd-{family.name}",
        solution=sorted(solution),
        weight=g.weight(solution),
        lower_bound=lb,
        claimed_factor=0.0,           # no factor claim; exactness is audited
        constants={"family": family.name,
                   "treewidth_bound": family.treewidth_bound},
        breakdown=breakdown,
        flags=[],
    )
    return cert
