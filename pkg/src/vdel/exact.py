"""Exact small-instance solvers: weight-ordered subset search and an
obstruction-driven branch-and-bound.

The two are algorithmically independent on purpose; the harness cross-checks
them against each other, and the approximation suites use whichever fits the
instance (subset search is the reference [DERIVED]-value oracle, the
branch-and-bound also powers the solvers' exact fallbacks).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .graph import Graph, GraphError, induced_subgraph
from .separators import _subsets_by_weight

FeasibleFn = Callable[[set[int]], bool]
# Returns the vertex set of some live obstruction, or None when clean.
ObstructionFinder = Callable[[Graph], Optional[tuple[int, ...]]]


def exact_by_subsets(g: Graph, feasible: FeasibleFn,
                     size_limit: int = 16) -> tuple[Fraction, list[int]]:
    """Minimum-weight deletion set by subset enumeration in nondecreasing
    weight order; the first feasible subset is optimal."""
    if g.n > size_limit:
        raise GraphError(f"exact subset search refused: n={g.n} > {size_limit}")
    for subset in _subsets_by_weight(g.weights):
        if feasible(set(subset)):
            return g.weight(subset), sorted(subset)
    raise AssertionError("unreachable: deleting everything is always feasible")


def exact_by_branching(g: Graph, finder: ObstructionFinder,
                       node_budget: int = 2_000_000) -> tuple[Fraction, list[int]]:
    """Exact minimum-weight set hitting every obstruction the finder can
    produce, by branching on the vertices of one live obstruction.

    Branch i deletes the obstruction's i-th vertex and forbids the earlier
    ones, so the subtrees partition the solution space; pruning is by
    accumulated weight against the incumbent.
    """
    best: list = [None, None]     # weight, sorted solution
    nodes = 0

    def rec(sub: Graph, back: list[int], deleted: list[int],
            acc: Fraction, forbidden: frozenset[int]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise GraphError("branch-and-bound node budget exhausted")
        if best[0] is not None and acc >= best[0]:
            return
        obs = finder(sub)
        if obs is None:
            best[0], best[1] = acc, sorted(deleted)
            return
        host_obs = [back[v] for v in obs]
        cheapest = min((g.weights[v] for v in host_obs if v not in forbidden),
                       default=None)
        if cheapest is None:
            return                 # every obstruction vertex is forbidden
        if best[0] is not None and acc + cheapest >= best[0]:
            return
        blocked = set(forbidden)
        for v in sorted(set(host_obs), key=lambda v: (g.weights[v], v)):
            if v in blocked:
                continue
            nsub, nback = induced_subgraph(g, [u for u in range(g.n)
                                               if u not in set(deleted) | {v}])
            rec(nsub, nback, deleted + [v], acc + g.weights[v],
                frozenset(blocked))
            blocked.add(v)

    rec(*induced_subgraph(g, range(g.n)), [], Fraction(0), frozenset())
    assert best[0] is not None
    return best[0], best[1]
