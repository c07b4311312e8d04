import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powergraph.detour import DetourBudgetError
from powergraph.graphs import Graph, complete_graph, path_graph
from powergraph.matrices import (
    AlphaRangeError,
    DisconnectedGraphError,
    a_alpha,
    adjacency,
    degree_diag,
    detour_matrix,
    distance_matrix,
    laplacian,
    rd_alpha,
    reciprocal_distance,
    reciprocal_transmission,
    signless_laplacian,
)
from powergraph.sequences import family_detour_matrix


def test_k2_basics():
    g = complete_graph(2)
    assert np.array_equal(adjacency(g), [[0, 1], [1, 0]])
    assert np.array_equal(degree_diag(g), np.eye(2))
    assert np.array_equal(laplacian(g), [[1, -1], [-1, 1]])
    assert np.array_equal(reciprocal_distance(g), [[0, 1], [1, 0]])
    assert np.array_equal(reciprocal_transmission(g), np.eye(2))


def test_single_vertex():
    g = Graph(1)
    assert np.array_equal(adjacency(g), [[0.0]])


def test_handshake_at_2_3(family):
    _, graph, _ = family(2, 3)
    assert degree_diag(graph).trace() == 174 == 2 * graph.edge_count()


def test_a_alpha_endpoints(family):
    _, graph, _ = family(2, 3)
    assert np.array_equal(a_alpha(graph, 0.0), adjacency(graph))
    assert np.array_equal(a_alpha(graph, 1.0), degree_diag(graph))
    q = signless_laplacian(graph)
    assert np.allclose(a_alpha(graph, 0.5), q / 2.0)


@given(st.floats(0, 1), st.floats(0, 1))
def test_a_alpha_laplacian_identity(alpha, beta):
    # with the PSD sign L = D - A the interpolation identity reads (alpha - beta) L
    g = path_graph(5)
    lhs = a_alpha(g, alpha) - a_alpha(g, beta)
    assert np.allclose(lhs, (alpha - beta) * laplacian(g), atol=1e-12)


def test_alpha_range_errors(family):
    _, graph, _ = family(2, 3)
    with pytest.raises(AlphaRangeError):
        a_alpha(graph, -0.1)
    with pytest.raises(AlphaRangeError):
        rd_alpha(graph, 1.5)


def test_laplacian_row_sums(family):
    _, graph, _ = family(2, 3)
    assert np.allclose(laplacian(graph).sum(axis=1), 0.0)


def test_laplacian_kernel_dimension(family):
    # connected graph: eigenvalue 0 with multiplicity exactly 1
    _, graph, _ = family(2, 3)
    values = np.linalg.eigvalsh(laplacian(graph))
    assert int(np.sum(np.abs(values) < 1e-9)) == 1
    assert values.min() > -1e-9


def test_matrices_exactly_symmetric(family):
    _, graph, _ = family(2, 3)
    for m in (
        adjacency(graph),
        a_alpha(graph, 0.3),
        laplacian(graph),
        signless_laplacian(graph),
        distance_matrix(graph),
        reciprocal_distance(graph),
        rd_alpha(graph, 0.7),
        detour_matrix(graph),
    ):
        assert np.array_equal(m, m.T)


def test_distances_at_2_3(family):
    _, graph, classes = family(2, 3)
    dist = distance_matrix(graph)
    off = ~np.eye(graph.n, dtype=bool)
    assert set(np.unique(dist[off])) == {1, 2}
    assert all(dist[classes.e, v] == 1 for v in range(graph.n) if v != classes.e)
    h2 = sorted(classes.h2)
    assert dist[h2[0], h2[1]] == 2


def test_triangle_inequality_exhaustive(family):
    _, graph, _ = family(2, 3)
    dist = distance_matrix(graph)
    for a, b, c in itertools.product(range(graph.n), repeat=3):
        assert dist[a, c] <= dist[a, b] + dist[b, c]


def test_disconnected_rejected():
    g = Graph(3)
    g.add_edge(0, 1)
    with pytest.raises(DisconnectedGraphError):
        distance_matrix(g)


def test_reciprocal_transmissions_at_2_3(family):
    _, graph, classes = family(2, 3)
    rt = np.diag(reciprocal_transmission(graph))
    assert rt[classes.e] == 23
    assert rt[classes.u] == 20
    assert all(rt[v] == 17 for v in classes.h1)
    assert all(rt[v] == 12 for v in classes.h2)
    assert all(rt[v] == 13 for v in classes.h3)


def test_rd_alpha_endpoints_and_midpoint(family):
    _, graph, classes = family(2, 3)
    rd = reciprocal_distance(graph)
    rt = reciprocal_transmission(graph)
    assert np.array_equal(rd_alpha(graph, 0.0), rd)
    assert np.array_equal(rd_alpha(graph, 1.0), rt)
    assert np.allclose(rd_alpha(graph, 0.5), (rt + rd) / 2.0)
    pendant = min(classes.h2)
    assert rd_alpha(graph, 0.5)[pendant, pendant] == 6.0


def test_rt_is_row_sum(family):
    _, graph, _ = family(2, 3)
    rd = reciprocal_distance(graph)
    assert np.array_equal(np.diag(reciprocal_transmission(graph)), rd.sum(axis=1))


# detour ------------------------------------------------------------------


def test_detour_path3():
    d = detour_matrix(path_graph(3))
    assert d[0, 2] == 2
    assert d[0, 1] == 1


def test_detour_k4():
    d = detour_matrix(complete_graph(4))
    off = ~np.eye(4, dtype=bool)
    assert set(np.unique(d[off])) == {3}


def test_detour_tree_equals_distance():
    g = path_graph(6)
    assert np.array_equal(detour_matrix(g), distance_matrix(g))


def test_detour_family_values(family):
    params, graph, classes = family(2, 3)
    d = detour_matrix(graph)
    h1 = min(classes.h1)
    h2 = sorted(classes.h2)
    assert d[classes.e, h2[0]] == 1
    assert d[classes.e, classes.u] == 11
    assert d[classes.e, h1] == 13
    assert d[h2[0], h2[1]] == 2
    assert np.array_equal(d, family_detour_matrix(graph, classes, params))


def test_detour_dominates_distance(family):
    _, graph, _ = family(2, 3)
    d = detour_matrix(graph)
    dist = distance_matrix(graph)
    assert (d >= dist).all()
    assert (d <= graph.n - 1).all()


def test_detour_c4_crossing_pairs():
    d = detour_matrix(Graph.from_edge_list("0 1\n1 2\n2 3\n3 0\n"))
    assert d[0, 1] == 3  # go the long way around
    assert d[0, 2] == 2


def test_matrix_exports():
    from powergraph.matrices import matrix_to_csv, matrix_to_json_dict

    g = complete_graph(2)
    assert matrix_to_csv(adjacency(g)) == "0.0,1.0\n1.0,0.0\n"
    payload = matrix_to_json_dict(adjacency(g))
    assert payload == {"n": 2, "rows": [[0.0, 1.0], [1.0, 0.0]]}


def test_detour_budget_error():
    # twinless circulant: the quotient search degenerates to plain DFS
    n = 40
    g = Graph(n)
    for i in range(n):
        for step in (1, 3, 7):
            g.add_edge(i, (i + step) % n)
    with pytest.raises(DetourBudgetError):
        detour_matrix(g, time_budget_s=0.05)
