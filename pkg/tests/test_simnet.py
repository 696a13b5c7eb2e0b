import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from patentchem.molfeat import Fingerprint
from patentchem.simnet import (
    CUTOFF_GRID,
    SimilarityGraph,
    adjacency,
    build_graph,
    build_graphs,
    dump_edges,
    edges_from_adjacency,
    load_edges,
    network_features,
)


def fp(*bits):
    return Fingerprint.from_indices(bits, 64)


def graph(nodes, edges):
    return SimilarityGraph(0.5, tuple(nodes), frozenset(tuple(sorted(e)) for e in edges))


random_fps = st.dictionaries(
    st.text(alphabet="abcdef", min_size=1, max_size=3),
    st.sets(st.integers(0, 15), max_size=8).map(lambda s: Fingerprint.from_indices(s, 64)),
    min_size=1, max_size=9,
)


def test_cutoff_grid():
    assert CUTOFF_GRID == (0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def test_inclusive_cutoff_example():
    g = build_graph({"A": fp(1, 2, 3, 4), "B": fp(1, 2, 3, 5), "C": fp(9, 10)}, 0.6)
    assert g.edges == {("A", "B")}
    assert g.similarity[("A", "B")] == 0.6


def test_single_compound_has_no_edges():
    g = build_graph({"A": fp(1)}, 0.4)
    assert not g.edges
    assert adjacency(g).tolist() == [[0]]


def test_triangle_adjacency():
    g = graph("ABC", [("A", "B"), ("B", "C"), ("A", "C")])
    assert adjacency(g).tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_graph_validation():
    with pytest.raises(ValueError):
        graph("AB", [("A", "A")])
    with pytest.raises(ValueError):
        SimilarityGraph(0.5, ("A", "B"), frozenset({("B", "A")}))
    with pytest.raises(ValueError):
        SimilarityGraph(1.5, ("A",), frozenset())


@given(random_fps)
def test_nesting_symmetry_round_trip(fps):
    graphs = build_graphs(fps)
    for lo, hi in zip(graphs, graphs[1:]):
        assert hi.edges <= lo.edges
    for g in graphs:
        a = adjacency(g)
        assert (a == a.T).all() and not a.diagonal().any()
        assert edges_from_adjacency(g.node_ids, a) == g.edges
        assert all(g.similarity[e] >= g.cutoff for e in g.edges)
        feats = network_features(g)
        assert sum(f.degree for f in feats.values()) == 2 * len(g.edges)
        assert sum(f.pagerank_score for f in feats.values()) == pytest.approx(1.0, abs=1e-9)


def test_path_features():
    f = network_features(graph("ABC", [("A", "B"), ("B", "C")]))
    assert [f[k].degree for k in "ABC"] == [1, 2, 1]
    assert f["B"].betweenness == 1.0
    assert f["A"].betweenness == f["C"].betweenness == 0.0
    assert all(f[k].clustering_coefficient == 0.0 for k in "ABC")


def test_triangle_clustering():
    f = network_features(graph("ABC", [("A", "B"), ("B", "C"), ("A", "C")]))
    assert all(f[k].clustering_coefficient == 1.0 for k in "ABC")


def test_isolated_node():
    f = network_features(graph("ABCD", [("A", "B"), ("B", "C")]))["D"]
    assert (f.degree, f.degree_centrality, f.clustering_coefficient, f.betweenness) == (0, 0.0, 0.0, 0.0)
    assert f.component_size == 1


@given(st.integers(0, 10_000))
def test_features_match_networkx(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 12))
    nodes = [f"n{i:02d}" for i in range(n)]
    edges = [(nodes[i], nodes[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    g = graph(nodes, edges)
    ref = nx.Graph()
    ref.add_nodes_from(nodes)
    ref.add_edges_from(edges)
    bet = nx.betweenness_centrality(ref, normalized=True)
    clus = nx.clustering(ref)
    pr = nx.pagerank(ref, alpha=0.85, tol=1e-12, max_iter=1000) if edges else {k: 1 / n for k in nodes}
    feats = network_features(g)
    for k in nodes:
        f = feats[k]
        assert f.betweenness == pytest.approx(bet[k], abs=1e-12)
        assert f.clustering_coefficient == pytest.approx(clus[k], abs=1e-12)
        assert f.pagerank_score == pytest.approx(pr[k], abs=1e-8)
        assert f.component_size == len(nx.node_connected_component(ref, k))
        assert f.degree_centrality == pytest.approx(ref.degree(k) / (n - 1) if n > 1 else 0.0)


@given(random_fps, st.randoms(use_true_random=False))
def test_node_order_independence(fps, rnd):
    ids = list(fps)
    rnd.shuffle(ids)
    a = network_features(build_graph(fps, 0.5))
    b = network_features(build_graph({k: fps[k] for k in ids}, 0.5))
    for k in fps:
        for x, y in zip(a[k].as_tuple(), b[k].as_tuple()):
            assert x == pytest.approx(y, abs=1e-12)


def test_edge_dump_round_trip():
    g = build_graph({"B": fp(1, 2), "A": fp(1, 2, 3), "C": fp(1, 2)}, 0.5)
    text = dump_edges(g)
    lines = text.splitlines()
    assert lines == sorted(lines)
    for a, b, s in load_edges(text):
        assert a < b and s == g.similarity[(a, b)]
    assert {(a, b) for a, b, _ in load_edges(text)} == g.edges
