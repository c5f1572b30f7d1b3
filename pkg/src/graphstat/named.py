"""Named graphs used in examples, tests and the CLI."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph


def path(m: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(1, m)], range(1, m + 1))


def cycle(m: int) -> Graph:
    return Graph.from_edges([(i, i % m + 1) for i in range(1, m + 1)])


def triangle() -> Graph:
    return cycle(3)


def star(arms: int) -> Graph:
    """Star with centre 1 and leaves 2..arms+1."""
    return Graph.from_edges([(1, i) for i in range(2, arms + 2)])


def y_graph() -> Graph:
    """Centre 2 with arms 1, 3, 4."""
    return Graph.from_edges([(1, 2), (2, 3), (2, 4)])


def lasso() -> Graph:
    """Stick 1-2 attached to the triangle 2-3-4."""
    return Graph.from_edges([(1, 2), (2, 3), (2, 4), (3, 4)])


def bowtie() -> Graph:
    """Triangles 1-2-3 and 2-4-5 glued at vertex 2."""
    return Graph.from_edges([(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)])


def complete(m: int) -> Graph:
    return Graph.from_edges(combinations(range(1, m + 1), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges([(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def wheel(rim: int) -> Graph:
    """Hub 1 joined to a rim cycle 2..rim+1."""
    rim_edges = [(2 + i, 2 + (i + 1) % rim) for i in range(rim)]
    return Graph.from_edges(rim_edges + [(1, i) for i in range(2, rim + 2)])


def octahedron() -> Graph:
    opposite = {(1, 6), (2, 4), (3, 5)}
    return Graph.from_edges([e for e in combinations(range(1, 7), 2) if e not in opposite])


def theta(a: int, b: int, c: int) -> Graph:
    """Two vertices 1, 2 joined by three internally disjoint paths with a, b, c edges."""
    edges = []
    nxt = 3
    for length in (a, b, c):
        chain = [1] + list(range(nxt, nxt + length - 1)) + [2]
        nxt += length - 1
        edges += list(zip(chain, chain[1:]))
    return Graph.from_edges(edges)


def diamond() -> Graph:
    """Two triangles sharing the edge 1-2."""
    return Graph.from_edges([(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)])


def two_connected_example() -> Graph:
    """Two triangles hanging off the cut pair {x, y} = {7, 8}, plus the edge x-y.

    Triangles 1-2-6 and 3-4-5; vertices 1 and 4 have degree two and
    2-7, 6-8, 3-7, 5-8 attach the triangles to the cut pair.
    """
    return Graph.from_edges(
        [(1, 2), (1, 6), (2, 6), (3, 4), (4, 5), (3, 5), (2, 7), (6, 8), (3, 7), (5, 8), (7, 8)]
    )


def lasso_three() -> Graph:
    """Lasso subdivided for three particles: stick 1-2-3, loop 3-4-5-6."""
    return Graph.from_edges([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 6)])


def two_hairs() -> Graph:
    """Square 1-2-3-4 with pendant vertices 5 at 1 and 6 at 3."""
    return Graph.from_edges([(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (3, 6)])


def two_arms_three() -> Graph:
    """Square 1-2-3-4 with arms 1-5-6 and 3-7-8, subdivided for three particles."""
    return Graph.from_edges([(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (5, 6), (3, 7), (7, 8)])


NAMED = {
    "triangle": triangle,
    "y": y_graph,
    "lasso": lasso,
    "bowtie": bowtie,
    "k4": lambda: complete(4),
    "k5": lambda: complete(5),
    "k33": lambda: complete_bipartite(3, 3),
    "w4": lambda: wheel(4),
    "w5": lambda: wheel(5),
    "octahedron": octahedron,
    "diamond": diamond,
    "two_connected_example": two_connected_example,
}
