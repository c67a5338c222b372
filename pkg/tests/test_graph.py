import pytest
from hypothesis import given, strategies as st

from doccontrol.graph import Snapshot, TemporalNetwork, degree, incident_edges


def snap(edges, nodes=(), index=1):
    return Snapshot.from_edges(index, edges, nodes)


@pytest.mark.parametrize(
    "edges, v, expected",
    [
        ([(1, 2)], 1, 1),
        ([(1, 2), (2, 1)], 1, 2),
        ([(1, 2), (1, 3), (3, 1)], 1, 3),
    ],
)
def test_degree(edges, v, expected):
    assert degree(snap(edges), v) == expected


def test_degree_unknown_node():
    with pytest.raises(KeyError, match="node 9"):
        degree(snap([(1, 2)]), 9)


def test_incident_edges():
    s = snap([(1, 2), (3, 1), (2, 3)])
    assert incident_edges(s, 1) == {(1, 2), (3, 1)}
    assert incident_edges(snap([], nodes=[4]), 4) == frozenset()
    assert incident_edges(snap([(1, 2), (2, 1)]), 2) == {(1, 2), (2, 1)}


def test_self_loop_rejected():
    with pytest.raises(ValueError, match="self-loop"):
        snap([(1, 1)])


def test_endpoint_outside_nodes():
    with pytest.raises(ValueError, match="outside"):
        Snapshot(1, frozenset({1}), frozenset({(1, 2)}))


def test_duplicates_collapse_and_isolated_nodes_kept():
    s = snap([(1, 2), (1, 2)], nodes=[7])
    assert s.edges == {(1, 2)}
    assert s.nodes == {1, 2, 7}
    assert degree(s, 7) == 0


def test_csr_matches_adjacency():
    s = snap([(3, 1), (1, 2), (1, 3), (2, 3)])
    ptr, idx = s.csr("out")
    order = s.order
    for i, v in enumerate(order):
        assert [order[j] for j in idx[ptr[i]:ptr[i + 1]]] == s.successors(v)
    ptr, idx = s.csr("in")
    for i, v in enumerate(order):
        assert [order[j] for j in idx[ptr[i]:ptr[i + 1]]] == s.predecessors(v)
    with pytest.raises(ValueError):
        s.csr("both")


def test_temporal_network_indices():
    a, b = snap([(1, 2)], index=1), snap([(2, 3)], index=2)
    net = TemporalNetwork((a, b), {"x": 1, "y": 2, "z": 3})
    assert net.T == 2 and list(net) == [a, b]
    with pytest.raises(ValueError, match="consecutive"):
        TemporalNetwork((b,))
    with pytest.raises(ValueError, match="registry"):
        TemporalNetwork((a,), {"x": 1, "y": 1})


edge_lists = st.lists(
    st.tuples(st.integers(0, 8), st.integers(0, 8)).filter(lambda e: e[0] != e[1]),
    max_size=30,
)


@given(edge_lists)
def test_construction_idempotent(edges):
    assert snap(edges) == snap(list(reversed(edges)))


@given(edge_lists)
def test_degree_recount(edges):
    s = snap(edges)
    for v in s.nodes:
        direct = sum(1 for a, _ in s.edges if a == v) + sum(1 for _, b in s.edges if b == v)
        assert degree(s, v) == direct == len(incident_edges(s, v))
