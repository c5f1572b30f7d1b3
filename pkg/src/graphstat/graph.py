"""Simple undirected graphs, spanning trees and sufficient subdivision."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input or unmet graph preconditions."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on positive integer vertex ids.

    Vertices keep the order in which they were declared; edges are stored
    as sorted pairs ``(low, high)``.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    _adj: Mapping[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        for v in self.vertices:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise GraphError(f"vertex id {v!r} is not a positive integer")
        vs = set(self.vertices)
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop edge at {u}")
            if u > v:
                raise GraphError(f"edge {(u, v)} not normalised")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {(u, v)} has an undeclared endpoint")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> Graph:
        """Build a graph, rejecting loops and repeated edges."""
        seen: set[Edge] = set()
        order: list[int] = [] if vertices is None else list(vertices)
        known = set(order)
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop edge at {u}")
            e = norm_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            if vertices is None:
                for w in e:
                    if w not in known:
                        known.add(w)
                        order.append(w)
        if vertices is None:
            order.sort()
        return cls(tuple(order), frozenset(seen))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def induced(self, keep: Iterable[int]) -> Graph:
        ks = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in ks),
            frozenset(e for e in self.edges if e[0] in ks and e[1] in ks),
        )

    def without(self, drop: Iterable[int]) -> Graph:
        ds = set(drop)
        return self.induced(v for v in self.vertices if v not in ds)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, in order of smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in sorted(self.vertices):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def to_json(self) -> str:
        return json.dumps({"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]})


def load_graph(text: str) -> Graph:
    """Parse the JSON graph document ``{"vertices": [...], "edges": [[u, v], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphError('parse error: expected an object with "vertices" and "edges"')
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise GraphError('parse error: "vertices" must be a list')
    for i, v in enumerate(verts):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise GraphError(f"vertices[{i}]: {v!r} is not a positive integer")
    if len(set(verts)) != len(verts):
        raise GraphError("vertices: duplicate vertex id")
    vs = set(verts)
    seen: set[Edge] = set()
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise GraphError(f"edges[{i}]: expected a pair of integers")
        u, v = e
        if u == v:
            raise GraphError(f"edges[{i}]: loop edge at {u}")
        for w in (u, v):
            if w not in vs:
                raise GraphError(f"edges[{i}]: dangling endpoint {w}")
        ne = norm_edge(u, v)
        if ne in seen:
            raise GraphError(f"edges[{i}]: duplicate edge {list(ne)}")
        seen.add(ne)
    return Graph(tuple(verts), frozenset(seen))


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise GraphError("graph is not connected")


def betti_number(g: Graph) -> int:
    """First Betti number |E| - |V| + 1 of a connected graph."""
    require_connected(g)
    return g.num_edges - g.num_vertices + 1


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree with a root of tree-degree one and a vertex labelling.

    ``labels[v]`` runs over ``1..|V|``; the root has label 1 and every
    vertex has a larger label than its parent.
    """

    root: int
    parent: Mapping[int, int]
    labels: Mapping[int, int]
    tree_edges: frozenset[Edge]
    deleted_edges: tuple[Edge, ...]

    def e(self, v: int) -> Edge:
        """Parent edge of a non-root vertex."""
        return norm_edge(v, self.parent[v])

    def tau(self, v: int) -> int:
        """Parent vertex of a non-root vertex."""
        return self.parent[v]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(sorted(self.labels, key=self.labels.__getitem__))


def _bfs_tree(g: Graph) -> set[Edge]:
    start = min(g.vertices, key=lambda v: (-g.degree(v), v))
    seen = {start}
    queue = deque([start])
    edges: set[Edge] = set()
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                edges.add(norm_edge(x, y))
                queue.append(y)
    return edges


def spanning_tree(g: Graph, tree_edges: Iterable[tuple[int, int]] | None = None) -> SpanningTree:
    """Deterministic spanning tree with a preorder labelling.

    Without explicit ``tree_edges`` the tree is grown breadth-first from the
    smallest vertex of maximum degree. The root is the smallest vertex of
    degree one in the tree, and labels follow a depth-first preorder from
    the root visiting children in ascending id order.
    """
    require_connected(g)
    if tree_edges is None:
        tedges = _bfs_tree(g)
    else:
        tedges = {norm_edge(u, v) for u, v in tree_edges}
        if not tedges <= g.edges:
            raise GraphError("tree edge not in graph")
        if len(tedges) != g.num_vertices - 1 or not Graph(g.vertices, frozenset(tedges)).is_connected():
            raise GraphError("edges do not form a spanning tree")
    tree = Graph(g.vertices, frozenset(tedges))
    if g.num_vertices == 1:
        root = g.vertices[0]
    else:
        root = min(v for v in g.vertices if tree.degree(v) == 1)
    parent: dict[int, int] = {}
    labels: dict[int, int] = {}
    stack = [root]
    while stack:
        x = stack.pop()
        labels[x] = len(labels) + 1
        kids = [y for y in tree.neighbors(x) if y != parent.get(x)]
        for y in kids:
            parent[y] = x
        stack.extend(reversed(kids))
    deleted = tuple(sorted(g.edges - tedges))
    return SpanningTree(root, parent, labels, frozenset(tedges), deleted)


@dataclass(frozen=True)
class SubdivisionMap:
    """Chains replacing each original edge, and the inverse for new vertices."""

    chains: Mapping[Edge, tuple[int, ...]]
    origin: Mapping[int, Edge]


def subdivide(g: Graph, n: int) -> tuple[Graph, SubdivisionMap]:
    """Insert ``max(n - 2, 0)`` vertices on every edge.

    New ids start above the current maximum and are handed out edge by edge
    in sorted edge order, walking from the lower endpoint.
    """
    if n < 1:
        raise GraphError("particle number must be positive")
    k = max(n - 2, 0)
    nxt = max(g.vertices, default=0) + 1
    chains: dict[Edge, tuple[int, ...]] = {}
    origin: dict[int, Edge] = {}
    new_edges: list[Edge] = []
    verts = list(g.vertices)
    for e in g.sorted_edges():
        inner = list(range(nxt, nxt + k))
        nxt += k
        chain = (e[0], *inner, e[1])
        chains[e] = chain
        for w in inner:
            origin[w] = e
            verts.append(w)
        new_edges.extend(norm_edge(a, b) for a, b in zip(chain, chain[1:]))
    return Graph(tuple(verts), frozenset(new_edges)), SubdivisionMap(chains, origin)


def _girth(g: Graph) -> int | None:
    best = None
    for s in g.vertices:
        dist = {s: 0}
        par = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    queue.append(y)
                elif par[x] != y:
                    c = dist[x] + dist[y] + 1
                    if best is None or c < best:
                        best = c
    return best


def _essential_chain_lengths(g: Graph) -> list[int]:
    """Lengths of maximal degree-2 chains joining two distinct essential vertices."""
    essential = {v for v in g.vertices if g.degree(v) != 2}
    out = []
    for s in essential:
        for first in g.neighbors(s):
            prev, cur, length = s, first, 1
            while cur not in essential:
                a, b = g.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
                length += 1
            if cur != s and s < cur:
                out.append(length)
    return out


def is_sufficiently_subdivided(g: Graph, n: int) -> bool:
    """Both subdivision conditions needed for the discrete model of n particles."""
    if n <= 2:
        return True
    if any(length < n - 1 for length in _essential_chain_lengths(g)):
        return False
    girth = _girth(g)
    return girth is None or girth >= n + 1
