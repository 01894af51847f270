import json
from fractions import Fraction

import pytest

from vdel.graph import (Graph, GraphError, connected_components,
                        graph_from_json, graph_to_json, induced_subgraph,
                        read_edge_list, read_graph_json,
                        vertex_weighted_shortest_path, write_edge_list,
                        write_graph_json)

from util import bf_shortest_vertex_path, random_graph


def test_no_self_loops():
    with pytest.raises(GraphError):
        Graph(2, [(0, 0)])


def test_negative_weight_rejected():
    with pytest.raises(GraphError):
        Graph(1, [], weights=[-1])


def test_adjacency_symmetric():
    g = Graph(3, [(0, 1), (1, 2)])
    assert 0 in g.adj[1] and 1 in g.adj[0]
    assert g.edge_count() == 2


def test_induced_subgraph_c4_edge():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    sub, back = induced_subgraph(g, [0, 1])
    assert sub.n == 2 and list(sub.edges()) == [(0, 1)]
    assert back == [0, 1]


def test_induced_subgraph_empty():
    g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    sub, back = induced_subgraph(g, [])
    assert sub.n == 0 and back == []


def test_induced_subgraph_nonadjacent_pair():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    sub, _ = induced_subgraph(g, [0, 2])
    assert sub.n == 2 and sub.edge_count() == 0


def test_induced_subgraph_identity():
    g = random_graph(7, 11, weights="mixed")
    sub, back = induced_subgraph(g, range(7))
    assert back == list(range(7))
    assert list(sub.edges()) == list(g.edges())
    assert sub.weights == g.weights


def test_induced_subgraph_unknown_vertex():
    g = Graph(2, [(0, 1)])
    with pytest.raises(GraphError):
        induced_subgraph(g, [0, 5])


def test_induced_edges_match_bruteforce():
    for seed in range(20):
        g = random_graph(8, seed)
        keep = [v for v in range(8) if (seed >> v) & 1]
        sub, back = induced_subgraph(g, keep)
        expected = {(min(a, b), max(a, b)) for a in keep for b in keep
                    if a < b and g.has_edge(a, b)}
        got = {(back[u], back[v]) for u, v in sub.edges()}
        assert got == expected


def test_components():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert connected_components(g) == [[0, 1, 2], [3, 4]]
    assert connected_components(Graph(0)) == []
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert connected_components(c5) == [[0, 1, 2, 3, 4]]


def test_shortest_path_examples():
    p3 = Graph(3, [(0, 1), (1, 2)])
    costs = [Fraction(0), Fraction(1), Fraction(0)]
    got = vertex_weighted_shortest_path(p3, costs, 0, 2)
    assert got == (Fraction(1), [0, 1, 2])

    single = Graph(1)
    got = vertex_weighted_shortest_path(single, [Fraction(2, 5)], 0, 0)
    assert got == (Fraction(2, 5), [0])

    two = Graph(2)
    assert vertex_weighted_shortest_path(two, [Fraction(0)] * 2, 0, 1) is None

    # C4 s-a-t-b-s: cheaper through a
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    costs = [Fraction(0), Fraction(1, 5), Fraction(0), Fraction(1, 2)]
    got = vertex_weighted_shortest_path(c4, costs, 0, 2)
    assert got is not None
    assert got[0] == Fraction(1, 5) and got[1] == [0, 1, 2]


def test_shortest_path_endpoint_errors():
    g = Graph(2, [(0, 1)])
    with pytest.raises(GraphError):
        vertex_weighted_shortest_path(g, [Fraction(1)] * 2, 0, 7)


def test_shortest_path_vs_bruteforce():
    for seed in range(25):
        g = random_graph(7, 100 + seed)
        rngish = (seed * 37) % 7, (seed * 17 + 3) % 7
        costs = [Fraction((seed + v * v) % 5, 3) for v in range(7)]
        got = vertex_weighted_shortest_path(g, costs, rngish[0], rngish[1])
        want = bf_shortest_vertex_path(g, costs, rngish[0], rngish[1])
        if want is None:
            assert got is None
        else:
            assert got is not None and got[0] == want
            assert sum(costs[v] for v in got[1]) == want


def test_json_roundtrip_bit_exact(tmp_path):
    g = Graph(4, [(0, 1), (1, 2), (2, 3)],
              weights=[Fraction(1, 3), Fraction(7, 2), 1, Fraction(22, 7)])
    text = graph_to_json(g)
    h = graph_from_json(text)
    assert h.weights == g.weights
    assert list(h.edges()) == list(g.edges())
    assert graph_to_json(h) == text
    path = str(tmp_path / "g.json")
    write_graph_json(g, path)
    assert read_graph_json(path).weights == g.weights
    # rationals serialized as p/q strings
    doc = json.loads(text)
    assert doc["weights"][0] == "1/3"


def test_edge_list_roundtrip(tmp_path):
    g = Graph(4, [(0, 1), (1, 2), (2, 3)], weights=["1/3", "2", "5/7", "1"])
    ep, wp = str(tmp_path / "g.col"), str(tmp_path / "g.w")
    write_edge_list(g, ep, wp)
    h = read_edge_list(ep, wp)
    assert list(h.edges()) == list(g.edges())
    assert h.weights == g.weights
