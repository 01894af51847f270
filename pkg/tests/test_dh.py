from fractions import Fraction

import pytest

from vdel.dh import (Biclique, DHObstruction, NotDistanceHereditaryError,
                     balancing_rw1_cut, cut_biclique,
                     enumerate_maximal_bicliques, enumerate_small_obstructions,
                     find_obstruction, is_biclique, is_distance_hereditary,
                     is_distance_hereditary_with_witness,
                     rankwidth1_decomposition, tree_edge_cut, validate_rw1,
                     verify_obstruction)
from vdel.graph import Graph, induced_subgraph

from util import bf_is_distance_hereditary, bf_max_bicliques, random_graph


def house():
    # apex 0 over base (1,2); square 1-3-4-2
    return Graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)])


def gem():
    return Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])


def domino():
    return Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)])


def c_n(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_patterns_are_not_dh():
    for g, tag in ((house(), "house"), (gem(), "gem"), (domino(), "domino")):
        res = is_distance_hereditary_with_witness(g)
        assert not res.is_dh
        assert res.obstruction is not None
        assert verify_obstruction(g, res.obstruction)
    res = is_distance_hereditary_with_witness(c_n(5))
    assert not res.is_dh and res.obstruction.tag == "long-hole"
    assert len(res.obstruction.vertices) == 5


def test_p4_and_trees_are_dh():
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    res = is_distance_hereditary_with_witness(p4)
    assert res.is_dh and res.pruning is not None
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert is_distance_hereditary(tree)
    assert is_distance_hereditary(Graph(3))      # edgeless


def test_recognition_vs_definition_bruteforce():
    for seed in range(50):
        g = random_graph(7, 3100 + seed, p_numer=1 + seed % 3, p_denom=4)
        got = is_distance_hereditary_with_witness(g)
        assert got.is_dh == bf_is_distance_hereditary(g)
        if not got.is_dh:
            assert verify_obstruction(g, got.obstruction)


def test_enumerate_small_obstructions_examples():
    got = enumerate_small_obstructions(house(), 5)
    assert [o.tag for o in got] == ["house"]

    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert enumerate_small_obstructions(k4, 10) == []

    got = enumerate_small_obstructions(c_n(6), 6)
    assert [o.tag for o in got] == ["long-hole"]
    assert len(got[0].vertices) == 6

    # gem + disjoint domino
    g = Graph(11, list(gem().edges())
              + [(u + 5, v + 5) for u, v in domino().edges()])
    tags = sorted(o.tag for o in enumerate_small_obstructions(g, 8))
    assert tags == ["domino", "gem"]


def _bf_obstruction_sets(g, max_size):
    """Independent scan: subsets whose induced graph is isomorphic to one of
    the four patterns (permutation check at these sizes)."""
    from itertools import combinations, permutations
    patterns = {"house": house(), "gem": gem(), "domino": domino()}
    want = set()
    for tag, pat in patterns.items():
        if pat.n > max_size:
            continue
        pedges = set(pat.edges())
        for subset in combinations(range(g.n), pat.n):
            for perm in permutations(subset):
                if all(g.has_edge(perm[a], perm[b]) == ((a, b) in pedges)
                       for a in range(pat.n) for b in range(a + 1, pat.n)):
                    want.add((tag, frozenset(subset)))
                    break
    from util import bf_holes
    for h in bf_holes(g, 5, max_size):
        want.add(("long-hole", h))
    return want


def test_enumerate_obstructions_vs_bruteforce_scan():
    for seed in range(20):
        g = random_graph(7, 3600 + seed, p_numer=2, p_denom=5)
        got = {(o.tag, frozenset(o.vertices))
               for o in enumerate_small_obstructions(g, 7)}
        assert got == _bf_obstruction_sets(g, 7)
        for o in enumerate_small_obstructions(g, 7):
            assert verify_obstruction(g, o)


def test_bicliques_examples():
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert enumerate_maximal_bicliques(p3) == [Biclique((1,), (0, 2))]
    k2 = Graph(2, [(0, 1)])
    assert enumerate_maximal_bicliques(k2) == [Biclique((0,), (1,))]
    c4 = c_n(4)
    assert enumerate_maximal_bicliques(c4) == [Biclique((0, 2), (1, 3))]


def test_bicliques_vs_bruteforce():
    for seed in range(30):
        g = random_graph(7, 4100 + seed, p_numer=2, p_denom=4)
        got = {frozenset((frozenset(b.part1), frozenset(b.part2)))
               for b in enumerate_maximal_bicliques(g)}
        assert got == bf_max_bicliques(g)


def test_biclique_count_bound_on_clean_graphs():
    # graphs with no DH-obstruction on <= 6 vertices obey (n^3+5n)/6
    from vdel.harness import InstanceSpec, gen_graph
    for seed in range(6):
        n = 20 + 3 * seed
        g = gen_graph(InstanceSpec("dhvd", n, "dh", 4600 + seed))
        assert enumerate_small_obstructions(g, 6) == []
        count = len(enumerate_maximal_bicliques(g))
        assert count <= (n ** 3 + 5 * n) // 6
    big = c_n(16)   # no small obstruction; the 16-hole is the only one
    assert enumerate_small_obstructions(big, 6) == []
    assert len(enumerate_maximal_bicliques(big)) <= (16 ** 3 + 5 * 16) // 6


def test_biclique_no_induced_p4_on_clean_graphs():
    # on graphs free of small DH-obstructions, G[M] has no induced P4
    from itertools import permutations
    for g in (c_n(16), Graph(9, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4),
                                 (3, 4), (4, 5), (5, 6), (5, 7), (6, 8),
                                 (7, 8)])):
        if enumerate_small_obstructions(g, 6):
            continue
        for b in enumerate_maximal_bicliques(g):
            verts = b.vertices()
            for quad in permutations(verts, 4):
                a, x, y, z = quad
                is_p4 = (g.has_edge(a, x) and g.has_edge(x, y)
                         and g.has_edge(y, z) and not g.has_edge(a, y)
                         and not g.has_edge(a, z) and not g.has_edge(x, z))
                assert not is_p4


def test_rw1_decomposition_examples():
    k2 = Graph(2, [(0, 1)])
    dec = rankwidth1_decomposition(k2)
    validate_rw1(k2, dec)
    assert len(dec.edges) == 1

    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    dec = rankwidth1_decomposition(star)
    validate_rw1(star, dec)

    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    dec = rankwidth1_decomposition(p4)
    validate_rw1(p4, dec)


def test_rw1_decomposition_random_dh():
    from vdel.harness import InstanceSpec, gen_graph
    for seed in range(20):
        g = gen_graph(InstanceSpec("dhvd", 6 + seed, "dh", 5200 + seed))
        dec = rankwidth1_decomposition(g)
        validate_rw1(g, dec)


def test_rw1_rejects_non_dh():
    with pytest.raises(NotDistanceHereditaryError):
        rankwidth1_decomposition(house())


def test_balancing_cut_examples():
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    cut = balancing_rw1_cut(p4, rankwidth1_decomposition(p4))
    assert len(cut.side1) == 2 and len(cut.side2) == 2
    assert cut.m1 and cut.m2

    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    cut = balancing_rw1_cut(star, rankwidth1_decomposition(star))
    assert {len(cut.side1), len(cut.side2)} == {2}

    k2 = Graph(2, [(0, 1)])
    cut = balancing_rw1_cut(k2, rankwidth1_decomposition(k2))
    assert len(cut.side1) == 1 and len(cut.side2) == 1


def test_balancing_cut_three_quarters():
    from vdel.harness import InstanceSpec, gen_graph
    for seed in range(15):
        g = gen_graph(InstanceSpec("dhvd", 9 + seed, "dh", 5700 + seed))
        if g.n < 2:
            continue
        cut = balancing_rw1_cut(g, rankwidth1_decomposition(g))
        assert max(len(cut.side1), len(cut.side2)) <= max(1, 3 * g.n // 4)


def test_disconnected_dh_decomposition():
    g = Graph(6, [(0, 1), (2, 3), (2, 4), (3, 4)])   # K2 + triangle + isolated
    dec = rankwidth1_decomposition(g)
    validate_rw1(g, dec)
    cut = balancing_rw1_cut(g, dec)
    assert max(len(cut.side1), len(cut.side2)) <= 4


def test_is_biclique():
    g = c_n(4)
    assert is_biclique(g, [0, 2], [1, 3])
    assert not is_biclique(g, [0, 1], [2, 3])
    assert not is_biclique(g, [], [1])
