from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings

from graphstat import named
from graphstat.complex import build_config_complex
from graphstat.connectivity import is_biconnected
from graphstat.graph import GraphError, subdivide
from graphstat.homology import FGAbelianGroup, homology_h1
from graphstat.statistics import n1_coefficient, predict_h1, star_alpha, star_beta, star_gamma

from conftest import connected_graphs, corpus


def gamma_by_graph(n, e):
    """Betti number of the configuration graph of n particles on the unsubdivided star."""
    c = build_config_complex(named.star(e), n, check=False)
    assert c.count(2) == 0
    h = nx.Graph()
    h.add_nodes_from(range(c.count(0)))
    h.add_edges_from(tuple(r for r, _ in col) for col in c.d1)
    return h.number_of_edges() - h.number_of_nodes() + nx.number_connected_components(h)


@pytest.mark.parametrize("n, e, expected", [(2, 3, 1), (2, 5, 6), (3, 5, 11)])
def test_star_gamma_examples(n, e, expected):
    assert star_gamma(n, e) == expected == gamma_by_graph(n, e)


@pytest.mark.parametrize("e", range(3, 8))
@pytest.mark.parametrize("n", range(1, 8))
def test_star_gamma_against_configuration_graph(n, e):
    if n > e:
        with pytest.raises(ValueError):
            star_gamma(n, e)
        return
    assert star_gamma(n, e) == gamma_by_graph(n, e)


def test_star_alpha_examples():
    assert all(star_alpha(2, e) == comb(e - 1, 2) for e in range(3, 11))
    assert star_alpha(3, 5) == -4
    assert star_alpha(4, 5) == 1


@pytest.mark.parametrize("e", range(3, 11))
def test_alpha_closed_form(e):
    for k in range(2, e):
        assert star_alpha(k, e) == (-1) ** k * comb(e - 1, k)


def test_star_alpha_domain():
    with pytest.raises(ValueError):
        star_alpha(1, 5)
    with pytest.raises(ValueError):
        star_alpha(5, 5)


def test_star_beta_examples():
    assert star_beta(2, 3) == 1
    assert star_beta(3, 3) == 3 == 3 * 2 // 2
    assert star_beta(3, 5) == 26 == 6 * comb(5, 4) - 4 * comb(4, 4) + comb(3, 4)


def test_n1_examples():
    assert n1_coefficient(2, 4, 2) == 2
    assert n1_coefficient(3, 3, 2) == 1
    with pytest.raises(ValueError):
        n1_coefficient(3, 2, 2)


def test_n1_two_particle_reduction():
    for mu in range(2, 9):
        for nu in range(mu, 13):
            assert n1_coefficient(mu, nu, 2) == (mu - 1) * (mu - 2) // 2 + (mu - 1) * (nu - mu)


@pytest.mark.parametrize("e", range(3, 7))
@pytest.mark.parametrize("n", range(2, 6))
def test_star_closure(n, e):
    assert n1_coefficient(e, e, n) == star_beta(n, e)
    assert predict_h1(named.star(e), n).group == FGAbelianGroup(star_beta(n, e))


@pytest.mark.parametrize(
    "g, n, expected",
    [
        (named.two_connected_example(), 2, FGAbelianGroup(7)),
        (named.complete_bipartite(3, 3), 2, FGAbelianGroup(4, (2,))),
        (named.complete_bipartite(3, 3), 3, FGAbelianGroup(4, (2,))),
        (named.complete_bipartite(3, 3), 4, FGAbelianGroup(4, (2,))),
        (named.bowtie(), 2, FGAbelianGroup(4)),
        (named.complete(5), 3, FGAbelianGroup(6, (2,))),
    ],
)
def test_predict_examples(g, n, expected):
    assert predict_h1(g, n).group == expected


def test_predict_report_fields():
    rep = predict_h1(named.bowtie(), 2).to_dict()
    assert rep["beta1"] == 2 and rep["N1"] == 2
    assert rep["cut_vertices"] == [{"vertex": 2, "mu": 2, "nu": 4, "N1": 2}]
    assert rep["group"] == {"rank": 4, "torsion": []}


def test_predict_rejects_bad_input():
    with pytest.raises(GraphError):
        predict_h1(named.triangle(), 1)
    from graphstat.graph import Graph

    with pytest.raises(GraphError):
        predict_h1(Graph.from_edges([(1, 2), (3, 4)]), 2)


def direct(g, n):
    h, _ = subdivide(g, n)
    c = build_config_complex(h, n)
    assert sum(c.count(d) for d in range(3)) <= 50_000
    return homology_h1(c)[0]


@pytest.mark.parametrize("name, g", sorted(corpus(8).items()))
@pytest.mark.parametrize("n", [2, 3])
def test_predict_matches_direct_homology(name, g, n):
    if g.num_vertices < n:
        pytest.skip("fewer vertices than particles")
    assert predict_h1(g, n).group == direct(g, n)


@pytest.mark.parametrize("name, g", sorted(corpus(8).items()))
def test_stabilization_for_biconnected(name, g):
    if not is_biconnected(g):
        pytest.skip("not 2-connected")
    groups = {n: predict_h1(g, n).group for n in (2, 3, 4, 5)}
    assert len(set(groups.values())) == 1


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_vertices=9, max_extra=7))
def test_predict_matches_direct_on_random_graphs(g):
    assert predict_h1(g, 2).group == direct(g, 2)
    if g.num_vertices + g.num_edges <= 18:
        assert predict_h1(g, 3).group == direct(g, 3)
