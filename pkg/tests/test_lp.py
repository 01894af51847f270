from fractions import Fraction

import pytest

from vdel.chordal import min_weight_hole
from vdel.cvd import hole_oracle, CvdConfig
from vdel.graph import Graph, GraphError
from vdel.lp import (LPBudgetError, OracleAnswer, fs_sum, fs_weight, nicify,
                     solve_cover_lp, strip_high, zero_out_structure)

from util import bf_holes, bf_min_deletion, bf_is_chordal, random_graph
from vdel.rng import Rng


def c_n(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


ORACLE = hole_oracle(CvdConfig())


def test_cover_lp_c4():
    res = solve_cover_lp(c_n(4), ORACLE)
    assert res.weight == 1
    assert res.separation_complete


def test_cover_lp_chordal_zero():
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    res = solve_cover_lp(k4, ORACLE)
    assert res.weight == 0 and all(v == 0 for v in res.x)


def test_cover_lp_two_c4s():
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0),
                  (4, 5), (5, 6), (6, 7), (7, 4)])
    res = solve_cover_lp(g, ORACLE)
    assert res.weight == 2


def test_cover_lp_feasible_and_lower_bounds_opt():
    for seed in range(25):
        g = random_graph(8, 5100 + seed, p_numer=2, p_denom=5, weights="mixed")
        res = solve_cover_lp(g, ORACLE)
        for hole in bf_holes(g):
            assert fs_sum(res.x, hole) >= 1
        opt = bf_min_deletion(
            g, lambda rest: bf_is_chordal_sub(g, rest))
        assert res.weight <= opt


def bf_is_chordal_sub(g, rest):
    from vdel.graph import induced_subgraph
    sub, _ = induced_subgraph(g, rest)
    return bf_is_chordal(sub)


def test_cover_lp_budget_error():
    g = Graph(12, [(i, (i + 1) % 4) for i in range(4)]
              + [(i + 4, (i + 1) % 4 + 4) for i in range(4)]
              + [(i + 8, (i + 1) % 4 + 8) for i in range(4)])
    with pytest.raises(LPBudgetError):
        solve_cover_lp(g, ORACLE, max_rows=1)


def test_nicify_examples():
    g10 = Graph(10)
    x = [Fraction(0)] * 10
    x[0] = Fraction(3, 100)   # below 1/20: drops to zero
    x[1] = Fraction(3, 10)    # -> smallest i/10 >= 0.6
    got = nicify(g10, x)
    assert got[0] == 0 and got[1] == Fraction(3, 5)

    g4 = Graph(4)
    got = nicify(g4, [Fraction(1, 2), 0, 0, 0])
    assert got[0] == 1


def test_nicify_properties_randomized():
    rng = Rng(77)
    for _ in range(300):
        n = 4 + rng.randint(10)
        g = Graph(n, weights=[Fraction(1 + rng.randint(6)) for _ in range(n)])
        x = [Fraction(rng.randint(200), 200) for _ in range(n)]
        got = nicify(g, x)
        assert all(v.denominator == 1 or n % v.denominator == 0 for v in got)
        assert fs_weight(g.weights, got) <= 4 * fs_weight(g.weights, x)
        for old, new in zip(x, got):
            assert new == 0 or new >= 2 * old
            if old >= Fraction(1, 2 * n):
                assert new >= 2 * old


def test_nicify_preserves_path_feasibility():
    # replay the preservation argument on random multicut-style instances
    from vdel.graph import vertex_weighted_shortest_path
    rng = Rng(991)
    for _ in range(60):
        n = 5 + rng.randint(6)
        g = random_graph(n, rng.randint(10**6), p_numer=2, p_denom=4)
        s, t = rng.randint(n), rng.randint(n)
        if s == t:
            continue
        # feasible x: 1/2 everywhere is feasible for any pair (paths have
        # >= 2 vertices); perturb upward randomly
        x = [Fraction(1, 2) + Fraction(rng.randint(4), 8) for _ in range(n)]
        hat = nicify(g, x)
        hit = vertex_weighted_shortest_path(g, hat, s, t)
        assert hit is None or hit[0] >= 1


def test_strip_high():
    g = Graph(2, weights=[1, 1])
    res = strip_high(g, [Fraction(1, 5), Fraction(1, 20)], Fraction(1, 8))
    assert res.removed == [0] and res.x == [Fraction(1, 20)]

    res = strip_high(g, [Fraction(0), Fraction(0)], Fraction(1, 8))
    assert res.removed == []

    # boundary is >=: threshold 1/4 catches exactly 1/4
    g16 = Graph(2, weights=[1, 1])
    res = strip_high(g16, [Fraction(1, 4), Fraction(6, 25)], Fraction(1, 4))
    assert res.removed == [0]


def test_strip_high_accounting_randomized():
    rng = Rng(313)
    for _ in range(300):
        n = 3 + rng.randint(8)
        g = Graph(n, weights=[Fraction(1 + rng.randint(9), 1 + rng.randint(3))
                              for _ in range(n)])
        x = [Fraction(rng.randint(40), 64) for _ in range(n)]
        t = Fraction(1, 2 + rng.randint(14))
        res = strip_high(g, x, t)   # asserts the accounting identity inside
        assert all(v < t for v in res.x)


def test_zero_out_clique_mode():
    c4 = c_n(4)
    got = zero_out_structure(c4, [Fraction(1, 10)] * 4, [], "clique")
    assert got == [Fraction(13, 100)] * 4    # empty m: pure 1+3max scaling

    got = zero_out_structure(c4, [Fraction(1, 5)] * 4, [0, 1], "clique")
    assert got[0] == got[1] == 0 and got[2] == got[3] == Fraction(8, 25)

    with pytest.raises(GraphError):
        zero_out_structure(c4, [Fraction(0)] * 4, [0, 2], "clique")


def test_zero_out_biclique_mode():
    c4 = c_n(4)
    got = zero_out_structure(c4, [Fraction(1, 10)] * 4, [0, 1], "biclique",
                             biclique_parts=({0}, {1}), log_value=Fraction(4))
    assert got[2] == Fraction(1, 5)

    with pytest.raises(GraphError):
        zero_out_structure(c4, [Fraction(0)] * 4, [0, 2], "biclique",
                           biclique_parts=({0}, {2}), log_value=Fraction(4))


def test_zero_out_clique_keeps_low_value_constraints():
    # a long cycle with tiny values: holes meet a clique in <= 2 vertices,
    # and (1+3max)(1-2max) >= 1 keeps them satisfied
    n = 101
    g = c_n(n)
    x = [Fraction(1, 100)] * n
    got = zero_out_structure(g, x, [0, 1], "clique")
    assert fs_sum(got, range(n)) >= 1
    hole = tuple(range(n))
    assert fs_sum(got, hole) >= 1


def test_zero_out_biclique_keeps_small_intersection_constraints():
    # constraints meeting the biclique in <= 3 vertices stay satisfied when
    # values are below 1/L and L >= 12
    L = Fraction(12)
    n = 20
    g = c_n(n)
    x = [Fraction(1, 16)] * n
    got = zero_out_structure(g, x, [0, 1], "biclique",
                             biclique_parts=({0}, {1}), log_value=L)
    # the full cycle loses 2 vertices of mass and is rescaled by 4/3
    assert fs_sum(got, range(n)) >= 1


def test_zero_out_exhaustive_small_instances():
    # all hole constraints with <= 2 clique vertices survive the transform
    rng = Rng(555)
    for _ in range(40):
        g = random_graph(8, rng.randint(10**6), p_numer=2, p_denom=5)
        holes = bf_holes(g)
        if not holes:
            continue
        x = [Fraction(1, 20)] * 8
        # make x feasible by scaling to the tightest hole
        worst = min(sum((x[v] for v in h), Fraction(0)) for h in holes)
        if worst < 1:
            x = [v / worst for v in x]
        if max(x) > Fraction(1, 6):
            continue   # the rescale proof needs the low-value invariant
        for u in range(8):
            for v in range(u + 1, 8):
                if not g.has_edge(u, v):
                    continue
                got = zero_out_structure(g, x, [u, v], "clique")
                for h in holes:
                    if len(h & {u, v}) <= 2:
                        assert fs_sum(got, h) >= 1
