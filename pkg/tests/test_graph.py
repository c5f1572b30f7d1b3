import json

import networkx as nx
import pytest
from hypothesis import given, settings

from graphstat import named
from graphstat.graph import (
    Graph,
    GraphError,
    betti_number,
    is_sufficiently_subdivided,
    load_graph,
    spanning_tree,
    subdivide,
)

from conftest import connected_graphs, corpus


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def test_load_round_trip():
    g = named.bowtie()
    assert load_graph(g.to_json()) == g


def test_load_is_order_and_whitespace_insensitive():
    a = load_graph('{"vertices":[1,2,3],"edges":[[1,2],[2,3]]}')
    b = load_graph('{ "vertices" : [1, 2, 3],\n "edges" : [[3, 2], [2, 1]] }')
    assert a == b


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ('{"vertices":[1,2],"edges":[[1,1]]}', "edges[0]: loop edge"),
        ('{"vertices":[1,2],"edges":[[1,3]]}', "edges[0]: dangling endpoint 3"),
        ('{"vertices":[1,2],"edges":[[1,2],[2,1]]}', "edges[1]: duplicate edge"),
        ('{"vertices":[1,1],"edges":[]}', "duplicate vertex"),
        ('{"vertices":[0],"edges":[]}', "vertices[0]"),
        ('{"vertices":[1,2],"edges":[[1,2]', "parse error at line 1"),
        ("[]", "parse error"),
    ],
)
def test_load_errors_name_the_location(doc, fragment):
    with pytest.raises(GraphError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        load_graph(doc)


def test_betti_numbers():
    assert betti_number(named.triangle()) == 1
    assert betti_number(named.complete(5)) == 6
    assert betti_number(named.complete_bipartite(3, 3)) == 4
    assert betti_number(named.path(5)) == 0
    with pytest.raises(GraphError):
        betti_number(Graph.from_edges([(1, 2), (3, 4)]))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_vertices=9))
def test_betti_matches_cycle_basis(g):
    assert betti_number(g) == len(nx.cycle_basis(to_nx(g)))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_vertices=9))
def test_spanning_tree_invariants(g):
    t = spanning_tree(g)
    tree = to_nx(Graph(g.vertices, t.tree_edges))
    assert nx.is_tree(tree)
    assert t.tree_edges <= g.edges
    assert len(t.deleted_edges) == betti_number(g)
    assert sorted(t.labels.values()) == list(range(1, g.num_vertices + 1))
    assert t.labels[t.root] == 1
    assert tree.degree(t.root) == 1
    for v, p in t.parent.items():
        assert t.labels[p] < t.labels[v]
    # preorder: every subtree occupies a contiguous label range
    for v in g.vertices:
        sub = nx.descendants(nx.bfs_tree(tree, t.root), v) | {v}
        labels = sorted(t.labels[w] for w in sub)
        assert labels == list(range(labels[0], labels[0] + len(labels)))


def test_spanning_tree_is_deterministic():
    g = named.two_connected_example()
    assert spanning_tree(g) == spanning_tree(g)


def test_lasso_tree_and_labels():
    t = spanning_tree(named.lasso())
    assert t.root == 1
    assert t.deleted_edges == ((3, 4),)
    assert t.order == (1, 2, 3, 4)


def test_bowtie_tree_and_labels():
    t = spanning_tree(named.bowtie())
    assert t.deleted_edges == ((1, 3), (4, 5))
    assert t.order == (1, 2, 3, 4, 5)


def test_explicit_tree_edges():
    g = named.complete(4)
    t = spanning_tree(g, [(1, 2), (2, 3), (3, 4)])
    assert t.root == 1 and t.order == (1, 2, 3, 4)
    with pytest.raises(GraphError):
        spanning_tree(g, [(1, 2), (2, 3), (1, 3)])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subdivision_shape(n):
    g = named.complete(4)
    h, smap = subdivide(g, n)
    k = max(n - 2, 0)
    assert h.num_vertices == g.num_vertices + k * g.num_edges
    assert h.num_edges == g.num_edges * (k + 1)
    for e, chain in smap.chains.items():
        assert (chain[0], chain[-1]) == e and len(chain) == k + 2
        for w in chain[1:-1]:
            assert h.degree(w) == 2 and smap.origin[w] == e
    assert betti_number(h) == betti_number(g)


def _sufficient_by_enumeration(g: Graph, n: int) -> bool:
    if n <= 2:
        return True
    h = to_nx(g)
    if any(len(c) < n + 1 for c in nx.simple_cycles(h)):
        return False
    essential = [v for v in g.vertices if g.degree(v) != 2]
    for i, s in enumerate(essential):
        for t in essential[i + 1 :]:
            for p in nx.all_simple_paths(h, s, t):
                if all(g.degree(w) == 2 for w in p[1:-1]) and len(p) - 1 < n - 1:
                    return False
    return True


@pytest.mark.parametrize("name, g", sorted(corpus(6).items()))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_sufficient_subdivision_against_enumeration(name, g, n):
    assert is_sufficiently_subdivided(g, n) == _sufficient_by_enumeration(g, n)
    h, _ = subdivide(g, n)
    assert is_sufficiently_subdivided(h, n)
    assert _sufficient_by_enumeration(h, n)


def test_triangle_needs_subdivision_for_three():
    assert not is_sufficiently_subdivided(named.triangle(), 3)
    assert is_sufficiently_subdivided(named.cycle(4), 3)
    assert is_sufficiently_subdivided(named.lasso_three(), 3)


def test_to_json_is_canonical():
    g = Graph.from_edges([(3, 1), (2, 1)])
    assert json.loads(g.to_json())["edges"] == [[1, 2], [1, 3]]
