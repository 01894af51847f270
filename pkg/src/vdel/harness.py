"""Instance generators, exact brute-force oracles, and the benchmark runner
with certificate auditing.

Every instance is a pure function of its spec (generator name, n, seed,
weight scheme) through the splitmix64 counter stream, so suites reproduce
bit-for-bit across runs, job counts and, with care, language ports.  Bench
CSVs contain only reproducible fields; wall-clock timings go to a separate
sidecar file that is exempt from the determinism contract.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .certificates import CertificateViolation, DeletionCertificate
from .chordal import is_chordal_with_witness
from .cvd import CvdConfig, solve_cvd
from .dh import is_distance_hereditary_with_witness
from .dhvd import DhvdConfig, solve_dhvd
from .exact import exact_by_branching, exact_by_subsets
from .graph import (Graph, GraphError, component_index, graph_from_dict,
                    graph_to_dict, induced_subgraph)
from .minors import FAMILIES, is_minor_free
from .multicut import (MulticutInstance, solve_multicut_chordal,
                       solve_multicut_general, verify_multicut)
from .pmfd import PmfdConfig, get_family, solve_pmfd
from .rng import ALGORITHM, Rng

CSV_SCHEMA_VERSION = 1

PROBLEMS = ("cvd", "dhvd", "pmfd-k2", "pmfd-c3", "pmfd-k4",
            "multicut-chordal", "multicut-general")


@dataclass(frozen=True)
class InstanceSpec:
    problem: str
    n: int
    generator: str
    seed: int
    weights: str = "unit"            # unit | uniform-int:W | exp-rational
    params: tuple[tuple[str, int], ...] = ()

    def param(self, key: str, default: int) -> int:
        for k, v in self.params:
            if k == key:
                return v
        return default

    def to_dict(self) -> dict:
        return {"problem": self.problem, "n": self.n,
                "generator": self.generator, "seed": self.seed,
                "weights": self.weights,
                "params": {k: v for k, v in self.params},
                "algorithm": ALGORITHM}

    @staticmethod
    def from_dict(d: dict) -> "InstanceSpec":
        return InstanceSpec(
            problem=d["problem"], n=int(d["n"]), generator=d["generator"],
            seed=int(d["seed"]), weights=d.get("weights", "unit"),
            params=tuple(sorted((k, int(v))
                                for k, v in d.get("params", {}).items())))


@dataclass
class Instance:
    spec: InstanceSpec
    graph: Graph
    pairs: tuple[tuple[int, int], ...] = ()

    def to_dict(self) -> dict:
        d = {"spec": self.spec.to_dict(), "graph": graph_to_dict(self.graph)}
        if self.spec.problem.startswith("multicut"):
            d["pairs"] = [list(p) for p in self.pairs]
        return d


# -- weights -------------------------------------------------------------------

def _draw_weight(rng: Rng, scheme: str) -> Fraction:
    if scheme == "unit":
        return Fraction(1)
    if scheme.startswith("uniform-int:"):
        w = int(scheme.split(":", 1)[1])
        return Fraction(1 + rng.randint(w))
    if scheme == "exp-rational":
        # geometric magnitude (trailing zeros of a draw) with a rational tail
        u = rng.next_u64()
        tz = min((u & -u).bit_length() - 1 if u else 12, 12)
        return Fraction((1 << tz) * (8 + rng.randint(8)), 8)
    raise GraphError(f"unknown weight scheme {scheme!r}")


def _weights(rng: Rng, scheme: str, n: int) -> list[Fraction]:
    return [_draw_weight(rng, scheme) for _ in range(n)]


# -- graph generators -----------------------------------------------------------

def _random_chordal_edges(n: int, rng: Rng, bag_max: int = 5) -> set[tuple[int, int]]:
    """Random clique-tree growth: every new vertex joins a random subset of a
    random existing bag, so the result is chordal by construction."""
    edges: set[tuple[int, int]] = set()
    bags: list[list[int]] = [[0]] if n else []
    for v in range(1, n):
        base = bags[rng.randint(len(bags))]
        take = rng.randint(min(len(base), bag_max - 1) + 1)
        chosen = sorted(rng.sample(base, take))
        for u in chosen:
            edges.add((min(u, v), max(u, v)))
        for a in range(len(chosen)):
            for b in range(a + 1, len(chosen)):
                edges.add((chosen[a], chosen[b]))
        bags.append(chosen + [v])
    return edges


def _plant_cycle(edges: set[tuple[int, int]], vertices: list[int]) -> None:
    k = len(vertices)
    for i in range(k):
        u, v = vertices[i], vertices[(i + 1) % k]
        edges.add((min(u, v), max(u, v)))


def gen_graph(spec: InstanceSpec) -> Graph:
    rng = Rng(spec.seed)
    n = spec.n
    name = spec.generator
    edges: set[tuple[int, int]] = set()
    if name == "chordal":
        edges = _random_chordal_edges(n, rng)
    elif name == "chordal-holes":
        k = spec.param("holes", 2)
        hole_len = spec.param("hole_len", 6)
        reserved = min(n, k * hole_len)
        base = n - reserved
        edges = _random_chordal_edges(base, rng) if base > 1 else set()
        nxt = base
        for _ in range(k):
            if nxt + 4 > n:
                break
            length = min(hole_len, n - nxt)
            cyc = list(range(nxt, nxt + length))
            _plant_cycle(edges, cyc)
            if base > 0:
                # one anchor edge per planted cycle keeps things connected
                edges.add((rng.randint(base), cyc[rng.randint(len(cyc))]))
            nxt += length
    elif name == "dh":
        edges = _random_dh_edges(n, rng)
    elif name == "dh-noise":
        edges = _random_dh_edges(n, rng)
        extra = spec.param("noise", max(1, n // 8))
        tries = 0
        added = 0
        while added < extra and tries < 50 * extra:
            tries += 1
            u, v = rng.randint(n), rng.randint(n)
            if u != v and (min(u, v), max(u, v)) not in edges:
                edges.add((min(u, v), max(u, v)))
                added += 1
    elif name == "er":
        m = spec.param("edges", 2 * n)
        tries = 0
        while len(edges) < m and tries < 50 * m:
            tries += 1
            u, v = rng.randint(n), rng.randint(n)
            if u != v:
                edges.add((min(u, v), max(u, v)))
    else:
        raise GraphError(f"unknown generator {name!r}")
    weights = _weights(Rng(spec.seed ^ 0x5EED), spec.weights, n)
    return Graph(n, sorted(edges), weights=weights)


def _random_dh_edges(n: int, rng: Rng) -> set[tuple[int, int]]:
    """Distance-hereditary growth: each vertex arrives as a pendant or a
    true/false twin of an existing vertex."""
    adj: dict[int, set[int]] = {0: set()} if n else {}
    for v in range(1, n):
        u = rng.randint(v)
        move = rng.randint(3)
        adj[v] = set()
        if move == 0:                       # pendant on u
            adj[v].add(u)
            adj[u].add(v)
        else:                               # twin of u
            for w in sorted(adj[u]):
                adj[v].add(w)
                adj[w].add(v)
            if move == 1:                   # true twin keeps the u-v edge
                adj[v].add(u)
                adj[u].add(v)
    return {(min(u, v), max(u, v)) for u in adj for v in adj[u]}


def gen_instance(spec: InstanceSpec) -> Instance:
    if spec.problem not in PROBLEMS:
        raise GraphError(f"unknown problem {spec.problem!r}")
    g = gen_graph(spec)
    if not spec.problem.startswith("multicut"):
        return Instance(spec, g)
    rng = Rng(spec.seed ^ 0x9A1B5)
    want = spec.param("pairs", 4)
    comp = component_index(g)
    by_comp: dict[int, list[int]] = {}
    for v in range(g.n):
        by_comp.setdefault(comp[v], []).append(v)
    eligible = [vs for vs in by_comp.values() if len(vs) >= 2]
    pairs: set[tuple[int, int]] = set()
    tries = 0
    while len(pairs) < want and eligible and tries < 50 * want:
        tries += 1
        vs = eligible[rng.randint(len(eligible))]
        s, t = rng.choice(vs), rng.choice(vs)
        if s != t:
            pairs.add((min(s, t), max(s, t)))
    return Instance(spec, g, tuple(sorted(pairs)))


def instance_to_json(inst: Instance) -> str:
    return json.dumps(inst.to_dict(), sort_keys=True)


def instance_from_json(text: str) -> Instance:
    doc = json.loads(text)
    spec = InstanceSpec.from_dict(doc["spec"])
    g = graph_from_dict(doc["graph"])
    pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in doc.get("pairs", [])))
    return Instance(spec, g, pairs)


# -- feasibility and exact oracles ----------------------------------------------

def residual_ok(problem: str, g: Graph, solution,
                pairs: tuple[tuple[int, int], ...] = ()) -> bool:
    sol = set(solution)
    if problem.startswith("multicut"):
        return verify_multicut(MulticutInstance.make(g, pairs), sol)
    sub, _ = induced_subgraph(g, [v for v in range(g.n) if v not in sol])
    if problem == "cvd":
        return is_chordal_with_witness(sub).chordal
    if problem == "dhvd":
        return is_distance_hereditary_with_witness(sub).is_dh
    if problem.startswith("pmfd-"):
        return is_minor_free(sub, get_family(problem.split("-", 1)[1]))
    raise GraphError(f"unknown problem {problem!r}")


def exact_oracle(problem: str, inst: Instance,
                 limit: int = 16) -> tuple[Fraction, list[int]]:
    """Reference optimum by weight-ordered subset enumeration."""
    if problem.startswith("pmfd") and limit > 14:
        limit = 14
    g = inst.graph

    def feasible(sol: set[int]) -> bool:
        return residual_ok(problem, g, sol, inst.pairs)

    return exact_by_subsets(g, feasible, limit)


def exact_oracle_branching(problem: str, inst: Instance) -> tuple[Fraction, list[int]]:
    """Independent second oracle: obstruction branch-and-bound."""
    g = inst.graph
    if problem == "cvd":
        from .chordal import find_any_hole
        return exact_by_branching(g, find_any_hole)
    if problem == "dhvd":
        from .dh import find_obstruction

        def finder(sub):
            obs = find_obstruction(sub)
            return None if obs is None else tuple(sorted(obs.vertices))

        return exact_by_branching(g, finder)
    if problem.startswith("pmfd-"):
        from .minors import family_violation
        family = get_family(problem.split("-", 1)[1])

        def finder(sub):
            hit = family_violation(sub, family)
            if hit is None:
                return None
            return tuple(sorted(v for vs in hit[1].values() for v in vs))

        return exact_by_branching(g, finder)
    if problem.startswith("multicut"):
        from .graph import vertex_weighted_shortest_path
        pairs = inst.pairs

        def finder(sub):
            # the branch graph is an induced subgraph; recover live pairs by
            # labels, which the harness sets to host indices
            label_pos = {lab: i for i, lab in enumerate(sub.labels)}
            hop = [Fraction(1)] * sub.n
            for s, t in pairs:
                if s in label_pos and t in label_pos:
                    hit = vertex_weighted_shortest_path(
                        sub, hop, label_pos[s], label_pos[t])
                    if hit is not None:
                        return tuple(hit[1])
            return None

        return exact_by_branching(g, finder)
    raise GraphError(f"unknown problem {problem!r}")


# -- benchmark running -----------------------------------------------------------

@dataclass
class BenchRecord:
    spec: InstanceSpec
    weight: Fraction
    lower_bound: Fraction
    hitting_lower_bound: Fraction
    certified: bool
    feasible: bool
    flags: list[str]
    exact_opt: Optional[Fraction] = None
    wall_time: float = 0.0

    def ratio_vs_exact(self) -> Optional[float]:
        if self.exact_opt is None or self.exact_opt == 0:
            return None
        return float(self.weight / self.exact_opt)

    def csv_row(self) -> list[str]:
        params = ";".join(f"{k}={v}" for k, v in self.spec.params)
        return [str(CSV_SCHEMA_VERSION), self.spec.problem, self.spec.generator,
                str(self.spec.n), str(self.spec.seed), self.spec.weights,
                params, str(self.weight), str(self.lower_bound),
                str(self.hitting_lower_bound),
                "" if self.exact_opt is None else str(self.exact_opt),
                "" if self.ratio_vs_exact() is None else f"{self.ratio_vs_exact():.6f}",
                "1" if self.certified else "0",
                "1" if self.feasible else "0",
                "|".join(sorted(self.flags))]


CSV_HEADER = ["schema", "problem", "generator", "n", "seed", "weights",
              "params", "weight", "lower_bound", "hitting_lower_bound",
              "exact_opt", "ratio_vs_exact", "certified", "feasible", "flags"]


def solve_instance(inst: Instance, strict: bool = False) -> DeletionCertificate:
    problem = inst.spec.problem
    if problem == "cvd":
        return solve_cvd(inst.graph, CvdConfig(strict=strict))
    if problem == "dhvd":
        return solve_dhvd(inst.graph, DhvdConfig(strict=strict))
    if problem.startswith("pmfd-"):
        family = get_family(problem.split("-", 1)[1])
        return solve_pmfd(inst.graph, family, PmfdConfig(strict=strict))
    mc = MulticutInstance.make(inst.graph, inst.pairs)
    if problem == "multicut-chordal":
        return solve_multicut_chordal(mc)
    if problem == "multicut-general":
        return solve_multicut_general(mc)
    raise GraphError(f"unknown problem {problem!r}")


def run_one(spec: InstanceSpec, exact_limit: int = 14,
            strict: bool = False) -> BenchRecord:
    inst = gen_instance(spec)
    start = time.perf_counter()
    cert = solve_instance(inst, strict=strict)
    elapsed = time.perf_counter() - start
    feasible = residual_ok(spec.problem, inst.graph, cert.solution, inst.pairs)
    exact: Optional[Fraction] = None
    if inst.graph.n <= exact_limit:
        exact, _ = exact_oracle(spec.problem, inst, exact_limit)
    rec = BenchRecord(spec=spec, weight=cert.weight,
                      lower_bound=cert.lower_bound,
                      hitting_lower_bound=cert.hitting_lower_bound,
                      certified=cert.check(), feasible=feasible,
                      flags=list(cert.flags), exact_opt=exact,
                      wall_time=elapsed)
    if exact is not None and cert.weight < exact:
        raise CertificateViolation(
            f"solver beat the exact oracle on {spec}; oracle bug")
    return rec


def run_bench(suite: list[InstanceSpec], jobs: int = 1, exact_limit: int = 14,
              strict: bool = False) -> list[BenchRecord]:
    if jobs <= 1:
        return [run_one(s, exact_limit, strict) for s in suite]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_one, s, exact_limit, strict) for s in suite]
        return [f.result() for f in futures]


def records_to_csv(records: list[BenchRecord]) -> str:
    lines = [",".join(CSV_HEADER)]
    for rec in records:
        lines.append(",".join(rec.csv_row()))
    return "\n".join(lines) + "\n"


def timings_to_csv(records: list[BenchRecord]) -> str:
    lines = ["problem,n,seed,wall_time_s"]
    for rec in records:
        lines.append(f"{rec.spec.problem},{rec.spec.n},{rec.spec.seed},"
                     f"{rec.wall_time:.6f}")
    return "\n".join(lines) + "\n"


def summarize(records: list[BenchRecord]) -> dict:
    by_problem: dict[str, list[BenchRecord]] = {}
    for rec in records:
        by_problem.setdefault(rec.spec.problem, []).append(rec)
    summary: dict = {"total": len(records),
                     "infeasible": sum(1 for r in records if not r.feasible),
                     "uncertified": sum(1 for r in records if not r.certified),
                     "problems": {}}
    for problem, recs in sorted(by_problem.items()):
        ratios = sorted(r.ratio_vs_exact() for r in recs
                        if r.ratio_vs_exact() is not None)
        entry = {"count": len(recs),
                 "feasible": sum(1 for r in recs if r.feasible),
                 "certified": sum(1 for r in recs if r.certified)}
        if ratios:
            entry["max_ratio_vs_exact"] = ratios[-1]
            entry["median_ratio_vs_exact"] = ratios[len(ratios) // 2]
        summary["problems"][problem] = entry
    return summary


def default_suite() -> list[InstanceSpec]:
    """The stock bench suite: small but covering every problem family."""
    suite: list[InstanceSpec] = []
    for i in range(8):
        suite.append(InstanceSpec("multicut-chordal", 10 + 4 * i, "chordal",
                                  1000 + i, "unit", (("pairs", 3 + i % 3),)))
        suite.append(InstanceSpec("multicut-general", 10 + 3 * i, "er",
                                  2000 + i, "uniform-int:5",
                                  (("edges", 2 * (10 + 3 * i)), ("pairs", 3),)))
        suite.append(InstanceSpec("cvd", 10 + 4 * i, "chordal-holes", 3000 + i,
                                  "unit" if i % 2 else "uniform-int:4",
                                  (("holes", 1 + i % 3), ("hole_len", 5 + i % 4))))
        suite.append(InstanceSpec("dhvd", 8 + 3 * i, "dh-noise", 4000 + i,
                                  "unit" if i % 2 else "uniform-int:4",
                                  (("noise", 1 + i % 3),)))
        suite.append(InstanceSpec("pmfd-c3", 10 + 3 * i, "er", 5000 + i,
                                  "uniform-int:3",
                                  (("edges", (10 + 3 * i) * 3 // 2),)))
    suite.append(InstanceSpec("pmfd-k2", 12, "er", 6001, "unit", (("edges", 18),)))
    suite.append(InstanceSpec("pmfd-k4", 14, "er", 6002, "uniform-int:3",
                              (("edges", 21),)))
    return suite
