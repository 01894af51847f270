"""Exact-rational cutting-plane solver for obstruction-cover LPs, plus the
fractional-solution transforms used by the rounding pipelines (nicification,
high-value stripping, structure zero-out).

The LP min{ w.x : x(R) >= 1 for generated obstruction rows R, x >= 0 } is
solved through its dual (max 1.y, A'y <= w, y >= 0), whose slack basis is
feasible because weights are nonnegative; adding an obstruction row is adding
a dual column, so the tableau warm-starts across separation rounds.  All
arithmetic is fractions.Fraction: downstream rounding compares exact
multiples of 1/n and strict inequalities that floats would garble.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .graph import Graph, GraphError

FractionalSolution = list[Fraction]


class LPError(RuntimeError):
    pass


class LPBudgetError(LPError):
    def __init__(self, message: str, best: FractionalSolution):
        super().__init__(message)
        self.best = best


def fs_zero(n: int) -> FractionalSolution:
    return [Fraction(0)] * n


def fs_weight(weights: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((w * v for w, v in zip(weights, x)), Fraction(0))


def fs_restrict(x: Sequence[Fraction], back: Sequence[int]) -> FractionalSolution:
    """Pull a host solution down to a subgraph given the sub->host map."""
    return [x[h] for h in back]


def fs_sum(x: Sequence[Fraction], vertices: Iterable[int]) -> Fraction:
    return sum((x[v] for v in vertices), Fraction(0))


class CoverSimplex:
    """Dual simplex tableau for the covering LP, growing by one column per
    violated obstruction row.  Bland's rule keeps pivoting finite."""

    def __init__(self, costs: Sequence[Fraction]):
        self.n = len(costs)
        # columns: [0..n-1] slacks, then one per obstruction row, last is rhs
        self.rows: list[list[Fraction]] = []
        for i, c in enumerate(costs):
            row = [Fraction(0)] * self.n + [c]
            row[i] = Fraction(1)
            self.rows.append(row)
        self.obj: list[Fraction] = [Fraction(0)] * (self.n + 1)
        self.basis: list[int] = list(range(self.n))
        self.columns = self.n
        self.obstruction_rows: list[tuple[int, ...]] = []

    def solution(self) -> FractionalSolution:
        """Primal covering solution read off the slack reduced costs."""
        return [self.obj[v] for v in range(self.n)]

    def objective(self) -> Fraction:
        return self.obj[-1]

    def add_obstruction(self, vertices: Iterable[int]) -> None:
        vs = tuple(sorted(set(vertices)))
        if not vs or any(not 0 <= v < self.n for v in vs):
            raise LPError(f"bad obstruction row {vs}")
        self.obstruction_rows.append(vs)
        for i, row in enumerate(self.rows):
            row.insert(-1, sum((row[v] for v in vs), Fraction(0)))
        red = sum((self.obj[v] for v in vs), Fraction(0)) - 1
        self.obj.insert(-1, red)
        self.columns += 1
        self._reoptimize()

    def _pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        self.rows[r] = [a / piv for a in self.rows[r]]
        for i in range(self.n):
            if i != r and self.rows[i][c] != 0:
                f = self.rows[i][c]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
        if self.obj[c] != 0:
            f = self.obj[c]
            self.obj = [a - f * b for a, b in zip(self.obj, self.rows[r])]
        self.basis[r] = c

    def _reoptimize(self) -> None:
        while True:
            entering = -1
            for c in range(self.columns):
                if self.obj[c] < 0:
                    entering = c
                    break
            if entering < 0:
                return
            leaving = -1
            best: Optional[Fraction] = None
            for i in range(self.n):
                a = self.rows[i][entering]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leaving]):
                        best, leaving = ratio, i
            if leaving < 0:
                raise LPError("dual unbounded; the primal covering LP is infeasible")
            self._pivot(leaving, entering)


@dataclass
class OracleAnswer:
    """Separation result: a violated obstruction (vertex set with x-sum < 1)
    or None, plus whether the search provably exhausted the family."""
    violated: Optional[tuple[int, ...]]
    complete: bool = True


Oracle = Callable[[Graph, FractionalSolution], OracleAnswer]


@dataclass
class CoverResult:
    x: FractionalSolution
    weight: Fraction
    rows: list[tuple[int, ...]]
    separation_complete: bool

    def to_dict(self) -> dict:
        return {
            "weight": str(self.weight),
            "x": [str(v) for v in self.x],
            "rows": [list(r) for r in self.rows],
            "separation_complete": self.separation_complete,
        }


def solve_cover_lp(g: Graph, oracle: Oracle,
                   max_rows: Optional[int] = None) -> CoverResult:
    """Cutting-plane loop: solve over the generated rows, separate, repeat.

    On success the returned x is feasible for the whole family (per the
    oracle) and optimal for the generated-row relaxation, hence its weight is
    simultaneously the family LP optimum and a lower bound on the integral
    optimum.  An incomplete oracle can only under-separate, which keeps the
    lower-bound property intact and is recorded in the result.
    """
    if max_rows is None:
        max_rows = max(10 * g.n, 16)
    lp = CoverSimplex(g.weights)
    x = fs_zero(g.n)
    complete = True
    while True:
        ans = oracle(g, x)
        complete = complete and ans.complete
        if ans.violated is None:
            return CoverResult(x, lp.objective(), list(lp.obstruction_rows), complete)
        if fs_sum(x, ans.violated) >= 1:
            raise LPError(f"oracle returned a satisfied row {ans.violated}")
        if len(lp.obstruction_rows) >= max_rows:
            raise LPBudgetError(
                f"cutting-plane budget of {max_rows} rows exhausted", x)
        lp.add_obstruction(ans.violated)
        x = lp.solution()


# -- fractional-solution transforms -------------------------------------------


def nicify(g: Graph, x: Sequence[Fraction],
           modulus: Optional[int] = None) -> FractionalSolution:
    """Round x up to multiples of 1/n: values below 1/(2n) drop to zero, the
    rest rise to the smallest i/n at least twice the value.  Preserves path
    feasibility and at most quadruples the weight."""
    n = modulus if modulus is not None else g.n
    if n <= 0:
        raise GraphError("nicify needs a positive modulus")
    out: FractionalSolution = []
    half = Fraction(1, 2 * n)
    for v in x:
        if v < 0:
            raise GraphError("negative fractional value")
        if v < half:
            out.append(Fraction(0))
        else:
            i = (2 * v * n).__ceil__()
            out.append(Fraction(i, n))
    return out


@dataclass
class StripResult:
    removed: list[int]                  # h(x), in host indices
    residual: Graph
    back: list[int]                     # residual -> host
    x: FractionalSolution               # restricted to the residual


def strip_high(g: Graph, x: Sequence[Fraction], threshold: Fraction) -> StripResult:
    """Split off h(x) = {v : x(v) >= threshold} and restrict to the rest.

    The accounting identity (1/t) w(x_residual) + w(h) <= (1/t) w(x) is
    asserted exactly; it is what lets the caller charge the stripped weight
    against the fractional budget.
    """
    from .graph import induced_subgraph   # local import avoids a cycle

    if threshold <= 0:
        raise GraphError("strip threshold must be positive")
    removed = [v for v in range(g.n) if x[v] >= threshold]
    keep = [v for v in range(g.n) if x[v] < threshold]
    residual, back = induced_subgraph(g, keep)
    rx = fs_restrict(x, back)
    lhs = fs_weight(residual.weights, rx) / threshold + g.weight(removed)
    rhs = fs_weight(g.weights, x) / threshold
    assert lhs <= rhs, "strip_high accounting identity violated"
    return StripResult(removed, residual, back, rx)


def zero_out_structure(g: Graph, x: Sequence[Fraction], m: Iterable[int],
                       mode: str,
                       biclique_parts: Optional[tuple[set[int], set[int]]] = None,
                       log_value: Optional[Fraction] = None) -> FractionalSolution:
    """Zero a clique/biclique M and rescale everything else.

    clique mode:   scale = 1 + 3 * max x (max over all vertices); a hole
                   meets a clique in at most 2 vertices, so under the
                   low-value invariant feasibility survives.
    biclique mode: scale = 1 + 4/log_value; long holes meet a biclique in at
                   most 3 vertices after small obstructions are gone.
    """
    mset = set(m)
    if mode == "clique":
        if mset and not g.is_clique(mset):
            raise GraphError("zero_out_structure: m is not a clique")
        mx = max(x, default=Fraction(0))
        scale = 1 + 3 * mx
    elif mode == "biclique":
        if log_value is None or log_value <= 0:
            raise GraphError("biclique mode needs the log threshold value")
        if mset:
            if biclique_parts is None:
                raise GraphError("biclique mode needs the bipartition")
            p1, p2 = biclique_parts
            if set(p1) | set(p2) != mset or (p1 and p2 and not all(
                    g.has_edge(a, b) for a in p1 for b in p2)) or set(p1) & set(p2):
                raise GraphError("zero_out_structure: m is not a biclique")
        scale = 1 + Fraction(4) / log_value
    else:
        raise GraphError(f"unknown zero-out mode {mode!r}")
    return [Fraction(0) if v in mset else scale * x[v] for v in range(g.n)]
