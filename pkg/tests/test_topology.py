import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import (
    INF,
    floyd_warshall,
    random_directed_network,
    triangle_count_trace,
)
from wsdepnet.errors import DegenerateAnalysisError
from wsdepnet.matching import MatcherKind
from wsdepnet.network import network_from_edges
from wsdepnet.topology import (
    average_local_clustering,
    bfs_lengths,
    components,
    degree_correlation,
    degree_stats,
    distances,
    er_baseline,
    giant_subnetwork,
    sample_gnm_adjacency,
    transitivity,
    triangle_ratio,
    weak_components_of,
)


def _net(num_nodes, edges):
    return network_from_edges(num_nodes, edges, MatcherKind.SYNTACTIC_EQUAL)


# -- distances ----------------------------------------------------------------


def test_directed_path_distances():
    n = _net(3, [(0, 1), (1, 2)])
    d = distances(n, "directed")
    assert d.average == pytest.approx(4 / 3)
    assert d.diameter == 2
    assert d.finite_pairs == 3
    u = distances(n, "undirected")
    assert u.average == pytest.approx(4 / 3)
    assert u.diameter == 2
    assert u.finite_pairs == 6


def test_star_distances():
    n = _net(4, [(0, 1), (0, 2), (0, 3)])
    d = distances(n, "directed")
    assert d.average == pytest.approx(1.0)
    assert d.finite_pairs == 3
    assert d.diameter == 1
    u = distances(n, "undirected")
    assert u.average == pytest.approx(1.5)
    assert u.diameter == 2


def test_single_node_distances():
    n = _net(1, [])
    d = distances(n, "directed")
    assert d.average is None
    assert d.diameter == 0


def test_empty_network_distances_error():
    with pytest.raises(DegenerateAnalysisError, match="empty"):
        distances(_net(0, []), "directed")


def test_undirected_mode_requires_connectivity():
    n = _net(4, [(0, 1), (2, 3)])
    with pytest.raises(DegenerateAnalysisError):
        distances(n, "undirected")


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        distances(_net(2, [(0, 1)]), "both")


@st.composite
def _directed_nets(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_directed_network(np.random.default_rng(seed), max_n=25)


@given(_directed_nets())
@settings(max_examples=40)
def test_bfs_agrees_with_floyd_warshall(n):
    adj = n.out_adjacency()
    oracle = floyd_warshall(adj)
    for src in range(n.node_count):
        lengths = bfs_lengths(adj, src)
        for dst in range(n.node_count):
            expected = oracle[src][dst]
            assert lengths[dst] == (-1 if expected == INF else int(expected))


@given(_directed_nets())
@settings(max_examples=40)
def test_pairwise_dominance_undirected_le_directed(n):
    directed = n.out_adjacency()
    undirected = n.undirected_adjacency()
    for src in range(n.node_count):
        d_dir = bfs_lengths(directed, src)
        d_und = bfs_lengths(undirected, src)
        for dst in range(n.node_count):
            if d_dir[dst] >= 0:
                assert 0 <= d_und[dst] <= d_dir[dst]


# -- transitivity -------------------------------------------------------------


def test_triangle_transitivity_one():
    assert transitivity(_net(3, [(0, 1), (1, 2), (2, 0)])) == pytest.approx(1.0)


def test_path_transitivity_zero():
    assert transitivity(_net(3, [(0, 1), (1, 2)])) == 0.0


def test_no_triples_transitivity_zero():
    assert transitivity(_net(2, [(0, 1)])) == 0.0


@given(_directed_nets())
@settings(max_examples=40)
def test_triangles_agree_with_trace_oracle(n):
    undirected = n.undirected_adjacency()
    triples = sum(len(neigh) * (len(neigh) - 1) // 2 for neigh in undirected)
    expected = 3 * triangle_count_trace(undirected) / triples if triples else 0.0
    assert transitivity(n) == pytest.approx(expected, abs=1e-12)
    assert 0.0 <= transitivity(n) <= 1.0


def test_average_local_clustering_square_with_diagonal():
    # square 0-1-2-3 plus diagonal 0-2: local c = (1, 1/3)... by hand:
    # node 0: neighbors {1,2,3}, edges among them: (1,2),(2,3) -> 2/3
    # node 1: neighbors {0,2}, edge (0,2) -> 1
    # node 2: symmetric to 0 -> 2/3; node 3: neighbors {0,2}, edge -> 1
    adj = [[1, 2, 3], [0, 2], [0, 1, 3], [0, 2]]
    assert average_local_clustering(adj) == pytest.approx((2 / 3 + 1 + 2 / 3 + 1) / 4)


# -- degrees ------------------------------------------------------------------


def test_degree_stats_single_edge():
    stats = degree_stats(_net(2, [(0, 1)]))
    assert stats.in_degrees == [0, 1]
    assert stats.out_degrees == [1, 0]
    assert stats.total_degrees == [1, 1]
    assert stats.avg_in == stats.avg_out == pytest.approx(0.5)
    assert stats.avg_total == pytest.approx(1.0)
    assert stats.max_total == 1


def test_degree_averages_equal_link_ratio(k2_collection):
    from wsdepnet.network import build_network

    n = build_network(k2_collection, MatcherKind.SYNTACTIC_EQUAL)
    stats = degree_stats(n)
    assert stats.avg_in == pytest.approx(n.link_count / n.node_count)
    assert stats.avg_out == pytest.approx(n.link_count / n.node_count)
    assert stats.avg_total == pytest.approx(2 * n.link_count / n.node_count)


def test_star_degree_correlation_is_minus_one():
    n = _net(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert degree_correlation(n) == pytest.approx(-1.0, abs=1e-9)


def test_cycle_degree_correlation_degenerate():
    n = _net(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(DegenerateAnalysisError, match="degree"):
        degree_correlation(n)


def test_no_links_degree_correlation_degenerate():
    with pytest.raises(DegenerateAnalysisError):
        degree_correlation(_net(3, []))


@given(_directed_nets())
@settings(max_examples=30)
def test_degree_correlation_bounded(n):
    try:
        r = degree_correlation(n)
    except DegenerateAnalysisError:
        return
    assert -1.0 - 1e-12 <= r <= 1.0 + 1e-12


def test_directed_correlation_modes_exist():
    n = _net(4, [(0, 1), (0, 2), (3, 0), (1, 2)])
    for mode in ("total", "out-in", "in-out"):
        value = degree_correlation(n, mode=mode)
        assert -1.0 <= value <= 1.0


# -- components ---------------------------------------------------------------


def test_two_disjoint_edges_two_components():
    n = _net(4, [(0, 1), (2, 3)])
    decomposition = components(n)
    assert len(decomposition.components) == 2
    assert decomposition.sizes == [(2, 1), (2, 1)]
    assert decomposition.giant_index == 0


def test_k2_is_one_component(k2_collection):
    from wsdepnet.network import build_network

    n = build_network(k2_collection, MatcherKind.SYNTACTIC_EQUAL)
    # only c,d,e,f are connected through op2; a and b link into c,d,e too
    assert len(components(n).components) == 1


def test_giant_selection_five_over_three():
    edges5 = [(0, 1), (1, 2), (2, 3), (3, 4)]
    edges3 = [(5, 6), (6, 7)]
    n = _net(8, edges5 + edges3)
    giant, id_map = giant_subnetwork(n)
    assert giant.node_count == 5
    assert giant.link_count == 4
    assert sorted(id_map) == [0, 1, 2, 3, 4]


def test_giant_identity_on_connected():
    n = _net(3, [(0, 1), (1, 2)])
    giant, id_map = giant_subnetwork(n)
    assert giant.node_count == 3
    assert id_map == {0: 0, 1: 1, 2: 2}
    assert sorted(giant.links) == sorted(n.links)


def test_giant_of_empty_network_errors():
    with pytest.raises(DegenerateAnalysisError):
        giant_subnetwork(_net(0, []))


def test_components_ordering_breaks_size_ties_by_smallest_id():
    n = _net(4, [(2, 3), (0, 1)])
    decomposition = components(n)
    assert decomposition.components[0][0] == 0
    assert decomposition.components[1][0] == 2


def test_singletons_are_components():
    n = _net(3, [(0, 1)])
    decomposition = components(n)
    assert [len(c) for c in decomposition.components] == [2, 1]
    assert decomposition.sizes[1] == (1, 0)


# -- ER baseline --------------------------------------------------------------


def test_gnm_sample_shape():
    rng = np.random.default_rng(7)
    adj = sample_gnm_adjacency(12, 20, rng)
    edges = {(min(u, v), max(u, v)) for u in range(12) for v in adj[u]}
    assert len(edges) == 20
    assert all(u != v for u, v in edges)


def test_gnm_infeasible():
    with pytest.raises(ValueError, match="infeasible"):
        sample_gnm_adjacency(4, 7, np.random.default_rng(0))


def test_er_complete_graph_metrics():
    er = er_baseline(10, 45, samples=3, seed=0)
    assert er.transitivity_mean == pytest.approx(1.0)
    assert er.transitivity_sd == 0.0
    assert er.avg_distance_mean == pytest.approx(1.0)
    assert er.avg_distance_sd == 0.0


def test_er_determinism():
    a = er_baseline(30, 60, samples=5, seed=42)
    b = er_baseline(30, 60, samples=5, seed=42)
    assert a == b
    c = er_baseline(30, 60, samples=5, seed=43)
    assert c != a


def test_er_analytic_values_269_633():
    er = er_baseline(269, 633, samples=1, seed=0)
    k = 2 * 633 / 269
    assert er.analytic_transitivity == pytest.approx(k / 269)
    assert er.analytic_transitivity == pytest.approx(0.0175, abs=5e-4)
    assert er.analytic_distance == pytest.approx(math.log(269) / math.log(k))


def test_er_single_sample_sd_zero():
    er = er_baseline(20, 30, samples=1, seed=1)
    assert er.avg_distance_sd == 0.0
    assert er.transitivity_sd == 0.0


def test_er_rejects_bad_arguments():
    with pytest.raises(ValueError):
        er_baseline(10, 100, samples=1, seed=0)
    with pytest.raises(ValueError):
        er_baseline(10, 5, samples=0, seed=0)


# -- low-level helpers --------------------------------------------------------


def test_bfs_lengths_unreachable_is_minus_one():
    adj = [[1], [], [0]]
    assert bfs_lengths(adj, 0) == [0, 1, -1]
    assert bfs_lengths(adj, 2) == [1, 2, 0]


def test_weak_components_of():
    adj = [[1], [0], []]
    comps = weak_components_of(adj)
    assert sorted(map(tuple, comps)) == [(0, 1), (2,)]


def test_triangle_ratio_matches_oracle_small():
    adj = [[1, 2], [0, 2], [0, 1, 3], [2]]
    triples = sum(len(x) * (len(x) - 1) // 2 for x in adj)
    assert triangle_ratio(adj) == pytest.approx(3 * 1 / triples)
