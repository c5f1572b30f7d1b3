import random

import pytest
from hypothesis import strategies as st

from graphstat import named
from graphstat.graph import Graph


def random_connected(seed: int, max_vertices: int = 12, max_extra: int = 6) -> Graph:
    """Random spanning tree plus a few extra edges."""
    rng = random.Random(seed)
    nv = rng.randint(3, max_vertices)
    edges = {(rng.randint(1, v - 1), v) for v in range(2, nv + 1)}
    for _ in range(rng.randint(0, max_extra)):
        u, v = rng.sample(range(1, nv + 1), 2)
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(edges, range(1, nv + 1))


def figure_graphs() -> dict[str, Graph]:
    out = {name: make() for name, make in named.NAMED.items()}
    out.update(
        lasso_three=named.lasso_three(),
        two_hairs=named.two_hairs(),
        two_arms_three=named.two_arms_three(),
        star3=named.star(3),
        star4=named.star(4),
        c4=named.cycle(4),
        theta=named.theta(2, 2, 3),
    )
    return out


def corpus(n_random: int = 10) -> dict[str, Graph]:
    out = figure_graphs()
    for s in range(n_random):
        out[f"random{s}"] = random_connected(1000 + s)
    return out


@st.composite
def connected_graphs(draw, max_vertices: int = 7, max_extra: int = 4):
    nv = draw(st.integers(3, max_vertices))
    parents = [draw(st.integers(1, v - 1)) for v in range(2, nv + 1)]
    edges = {(p, v) for p, v in zip(parents, range(2, nv + 1))}
    extra = draw(st.lists(st.tuples(st.integers(1, nv), st.integers(1, nv)), max_size=max_extra))
    edges |= {(min(u, v), max(u, v)) for u, v in extra if u != v}
    return Graph.from_edges(edges, range(1, nv + 1))


@pytest.fixture(scope="session")
def figures():
    return figure_graphs()
