"""Vertex connectivity, blocks, 2-cut decomposition and planarity."""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import networkx as nx

from .graph import Edge, Graph, GraphError, norm_edge, require_connected

PLANAR = "three_connected_planar"
NONPLANAR = "three_connected_nonplanar"
CYCLE = "topological_cycle"


def _connected_after(adj: dict[int, set[int]], removed: set[int]) -> bool:
    rest = [v for v in adj if v not in removed]
    if len(rest) <= 1:
        return True
    seen = {rest[0]}
    queue = deque([rest[0]])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(rest)


def vertex_connectivity(g: Graph) -> int:
    """Largest k with |V| > k such that no fewer than k vertices disconnect g."""
    if not g.is_connected():
        return 0
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    nv = g.num_vertices
    for k in range(0, nv - 1):
        for cut in combinations(g.vertices, k):
            if not _connected_after(adj, set(cut)):
                return k
    return nv - 1


@dataclass(frozen=True)
class CutVertex:
    vertex: int
    mu: int
    nu: int


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Graph, ...]
    cut_vertices: tuple[CutVertex, ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Blocks by the Hopcroft-Tarjan low-point method (iterative DFS)."""
    require_connected(g)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[Graph] = []
    estack: list[Edge] = []
    root = min(g.vertices)
    disc[root] = low[root] = 0
    counter = 1
    stack = [(root, None, iter(g.neighbors(root)))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                estack.append(norm_edge(v, w))
                stack.append((w, v, iter(g.neighbors(w))))
                advanced = True
                break
            if disc[w] < disc[v]:
                estack.append(norm_edge(v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent is None:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            target = norm_edge(parent, v)
            edges = []
            while True:
                e = estack.pop()
                edges.append(e)
                if e == target:
                    break
            blocks.append(Graph.from_edges(edges))
    blocks.sort(key=lambda b: (min(b.vertices), b.sorted_edges()))
    count = Counter(v for b in blocks for v in b.vertices)
    cuts = []
    for v in sorted(x for x, c in count.items() if c > 1):
        cuts.append(CutVertex(v, len(g.without([v]).components()), g.degree(v)))
    return BlockDecomposition(tuple(blocks), tuple(cuts))


def is_biconnected(g: Graph) -> bool:
    return g.num_vertices >= 3 and g.is_connected() and not block_decomposition(g).cut_vertices


def is_planar(g: Graph) -> bool:
    """Exact planarity verdict (left-right algorithm from networkx)."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    planar, _ = nx.check_planarity(h)
    return planar


@dataclass
class MarkedComponent:
    """Multigraph piece of a 2-cut decomposition.

    ``edges`` holds ``(u, v, tag)`` triples; ``tag`` is ``None`` for an edge
    of the input graph and the id of the cut that created it otherwise.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int | None], ...]
    kind: str = ""

    def simple(self) -> Graph:
        return Graph.from_edges({norm_edge(u, v) for u, v, _ in self.edges}, self.vertices)

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class CutPair:
    x: int
    y: int
    mu: int
    cut_id: int


@dataclass
class TriDecomposition:
    components: list[MarkedComponent]
    cuts: list[CutPair]
    c2: int
    n3: int = 0
    n3_nonplanar: int = 0
    n3_cycles: int = 0
    n2: int = 0
    merged: list[tuple[int, ...]] = field(default_factory=list)


def n2_coefficient(mu: int) -> int:
    """Phases lost at a 2-cut with ``mu`` pieces: (mu - 2)(mu - 1) / 2."""
    if mu < 2:
        raise ValueError("mu must be at least 2")
    return (mu - 2) * (mu - 1) // 2


def _pieces(vertices: Iterable[int], edges, removed: set[int]) -> list[list[int]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices if v not in removed}
    for u, v, _ in edges:
        if u in adj and v in adj:
            adj[u].add(v)
            adj[v].add(u)
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def _is_cycle(comp: MarkedComponent) -> bool:
    deg = Counter()
    for u, v, _ in comp.edges:
        deg[u] += 1
        deg[v] += 1
    return all(deg[v] == 2 for v in comp.vertices) and len(comp.edges) == len(comp.vertices)


def tri_decomposition(g: Graph, seed: int | None = None) -> TriDecomposition:
    """Split a 2-connected graph at 2-cuts until every piece is 3-connected or a cycle.

    Each split adds a virtual edge between the cut pair to every piece; the
    edges already joining the pair form a piece of their own. Cuts are taken
    in lexicographic order, or in a shuffled order when ``seed`` is given.
    Afterwards, cycles glued along a cut with two pieces are merged back.
    """
    if not is_biconnected(g):
        raise GraphError("input is not 2-connected")
    rng = random.Random(seed) if seed is not None else None
    work = [MarkedComponent(tuple(sorted(g.vertices)), tuple((u, v, None) for u, v in g.sorted_edges()))]
    final: list[MarkedComponent] = []
    cuts: list[CutPair] = []
    while work:
        comp = work.pop()
        if _is_cycle(comp):
            comp.kind = CYCLE
            final.append(comp)
            continue
        pairs = list(combinations(comp.vertices, 2))
        if rng is not None:
            rng.shuffle(pairs)
        found = None
        for x, y in pairs:
            pieces = _pieces(comp.vertices, comp.edges, {x, y})
            if len(pieces) >= 2:
                found = (x, y, pieces)
                break
        if found is None:
            if len(comp.vertices) < 4:
                raise GraphError("unexpected small component in 2-cut decomposition")
            comp.kind = PLANAR if is_planar(comp.simple()) else NONPLANAR
            final.append(comp)
            continue
        x, y, pieces = found
        cid = len(cuts)
        direct = tuple(e for e in comp.edges if {e[0], e[1]} == {x, y})
        mu = len(pieces) + (1 if direct else 0)
        cuts.append(CutPair(min(x, y), max(x, y), mu, cid))
        virtual = (min(x, y), max(x, y), cid)
        for piece in pieces:
            ps = set(piece) | {x, y}
            edges = tuple(e for e in comp.edges if e[0] in ps and e[1] in ps and {e[0], e[1]} != {x, y})
            work.append(MarkedComponent(tuple(sorted(ps)), edges + (virtual,)))
        if direct:
            work.append(MarkedComponent((min(x, y), max(x, y)), direct + (virtual,)))
    # glue cycles across cuts with two pieces
    parent = list(range(len(final)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    holders: dict[int, list[int]] = {}
    for i, comp in enumerate(final):
        for _, _, tag in comp.edges:
            if tag is not None:
                holders.setdefault(tag, []).append(i)
    dropped: set[int] = set()
    for cut in cuts:
        if cut.mu != 2:
            continue
        a, b = holders[cut.cut_id]
        if final[a].kind == CYCLE and final[b].kind == CYCLE:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
                dropped.add(cut.cut_id)
    groups: dict[int, list[int]] = {}
    for i in range(len(final)):
        groups.setdefault(find(i), []).append(i)
    comps = []
    merged = []
    for members in groups.values():
        if len(members) == 1:
            comps.append(final[members[0]])
            continue
        verts = sorted({v for i in members for v in final[i].vertices})
        edges = tuple(e for i in members for e in final[i].edges if e[2] not in dropped)
        comps.append(MarkedComponent(tuple(verts), edges, CYCLE))
        merged.append(tuple(members))
    kept = [c for c in cuts if c.cut_id not in dropped]
    comps.sort(key=lambda c: (c.vertices, c.edges))
    res = TriDecomposition(comps, kept, len(kept), merged=merged)
    res.n3 = sum(1 for c in comps if c.kind == PLANAR)
    res.n3_nonplanar = sum(1 for c in comps if c.kind == NONPLANAR)
    res.n3_cycles = sum(1 for c in comps if c.kind == CYCLE)
    res.n2 = sum(n2_coefficient(c.mu) for c in kept)
    return res
