"""The cell complex of n hard-core particles on a graph, up to dimension two."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .graph import Edge, Graph, GraphError, is_sufficiently_subdivided, norm_edge


@dataclass(frozen=True, order=True)
class ConfigCell:
    """Stationary particles plus 0, 1 or 2 moving edges, in canonical order."""

    stationary: tuple[int, ...]
    movers: tuple[Edge, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.movers)

    def occupied(self) -> tuple[int, ...]:
        pts = list(self.stationary)
        for e in self.movers:
            pts.extend(e)
        return tuple(sorted(pts))

    def __str__(self) -> str:
        parts = [",".join(map(str, self.stationary))] if self.stationary else []
        parts += [f"({u},{v})" for u, v in self.movers]
        return "x".join(parts)


def config(points: Iterable[int]) -> ConfigCell:
    return ConfigCell(tuple(sorted(points)))


def cell1(stationary: Iterable[int], edge: tuple[int, int]) -> ConfigCell:
    return ConfigCell(tuple(sorted(stationary)), (norm_edge(*edge),))


def cell2(stationary: Iterable[int], e: tuple[int, int], f: tuple[int, int]) -> ConfigCell:
    a, b = sorted((norm_edge(*e), norm_edge(*f)))
    return ConfigCell(tuple(sorted(stationary)), (a, b))


Column = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ChainComplex:
    """Cells of dimensions 0-2 and sparse boundary columns.

    ``d1[j]`` lists ``(row, sign)`` pairs for the boundary of 1-cell ``j`` in
    terms of 0-cells; ``d2`` likewise maps 2-cells to 1-cells.
    """

    graph: Graph
    n: int
    cells: tuple[tuple[ConfigCell, ...], tuple[ConfigCell, ...], tuple[ConfigCell, ...]]
    d1: tuple[Column, ...]
    d2: tuple[Column, ...]
    index: tuple[Mapping[ConfigCell, int], ...] = field(repr=False, compare=False)

    def count(self, dim: int) -> int:
        return len(self.cells[dim])

    def idx(self, cell: ConfigCell) -> int:
        return self.index[cell.dim][cell]

    def boundary(self, dim: int, j: int) -> Column:
        return self.d1[j] if dim == 1 else self.d2[j]

    def euler_characteristic(self) -> int:
        return self.count(0) - self.count(1) + self.count(2)

    def to_json(self) -> str:
        cells = [[c.dim, list(c.stationary), [list(e) for e in c.movers]] for dim in self.cells for c in dim]
        d1 = [[r, j, s] for j, col in enumerate(self.d1) for r, s in col]
        d2 = [[r, j, s] for j, col in enumerate(self.d2) for r, s in col]
        return json.dumps({"cells": cells, "d1": d1, "d2": d2})


def _boundary1(c: ConfigCell) -> list[tuple[ConfigCell, int]]:
    (u, v), = c.movers
    return [(config(c.stationary + (v,)), 1), (config(c.stationary + (u,)), -1)]


def _boundary2(c: ConfigCell) -> list[tuple[ConfigCell, int]]:
    e, f = c.movers
    s = c.stationary
    return [
        (cell1(s + (e[1],), f), 1),
        (cell1(s + (e[0],), f), -1),
        (cell1(s + (f[1],), e), -1),
        (cell1(s + (f[0],), e), 1),
    ]


def boundary_of(c: ConfigCell) -> list[tuple[ConfigCell, int]]:
    """Signed faces of a cell under the low-to-high edge orientation."""
    if c.dim == 1:
        return _boundary1(c)
    if c.dim == 2:
        return _boundary2(c)
    return []


def build_config_complex(g: Graph, n: int, check: bool = True) -> ChainComplex:
    """Cells of the discrete configuration space of ``n`` particles on ``g``.

    With ``check`` the graph must satisfy the subdivision conditions for ``n``.
    """
    if n < 1:
        raise GraphError("particle number must be positive")
    if check and not is_sufficiently_subdivided(g, n):
        raise GraphError(f"graph is not sufficiently subdivided for {n} particles")
    verts = sorted(g.vertices)
    edges = g.sorted_edges()
    c0 = [ConfigCell(s) for s in combinations(verts, n)]
    c1 = []
    if n >= 1:
        for e in edges:
            rest = [v for v in verts if v not in e]
            c1.extend(ConfigCell(s, (e,)) for s in combinations(rest, n - 1))
    c2 = []
    if n >= 2:
        for e, f in combinations(edges, 2):
            if set(e) & set(f):
                continue
            rest = [v for v in verts if v not in e and v not in f]
            c2.extend(ConfigCell(s, (e, f)) for s in combinations(rest, n - 2))
    c0.sort()
    c1.sort()
    c2.sort()
    index = tuple({c: i for i, c in enumerate(cs)} for cs in (c0, c1, c2))
    d1 = tuple(tuple((index[0][f], s) for f, s in _boundary1(c)) for c in c1)
    d2 = tuple(tuple((index[1][f], s) for f, s in _boundary2(c)) for c in c2)
    return ChainComplex(g, n, (tuple(c0), tuple(c1), tuple(c2)), d1, d2, index)


def check_dd_zero(c: ChainComplex) -> bool:
    for col in c.d2:
        acc: dict[int, int] = {}
        for r, s in col:
            for r0, s0 in c.d1[r]:
                acc[r0] = acc.get(r0, 0) + s * s0
        if any(acc.values()):
            return False
    return True


@dataclass(frozen=True)
class Step:
    """One particle hops ``tail -> head`` while ``stationary`` stay put."""

    stationary: tuple[int, ...]
    tail: int
    head: int

    @property
    def cell(self) -> ConfigCell:
        return cell1(self.stationary, (self.tail, self.head))

    @property
    def sign(self) -> int:
        return 1 if self.tail < self.head else -1

    def start(self) -> ConfigCell:
        return config(self.stationary + (self.tail,))

    def end(self) -> ConfigCell:
        return config(self.stationary + (self.head,))


@dataclass(frozen=True)
class Loop:
    steps: tuple[Step, ...]

    def configurations(self) -> list[ConfigCell]:
        return [s.start() for s in self.steps] + ([self.steps[-1].end()] if self.steps else [])

    def is_closed(self) -> bool:
        if not self.steps:
            return True
        pairs = zip(self.steps, self.steps[1:] + self.steps[:1])
        return all(a.end() == b.start() for a, b in pairs)

    def reversed(self) -> Loop:
        return Loop(tuple(Step(s.stationary, s.head, s.tail) for s in reversed(self.steps)))

    def __add__(self, other: Loop) -> Loop:
        return Loop(self.steps + other.steps)

    def chain(self, c: ChainComplex) -> dict[int, int]:
        """Integer 1-chain of the loop in ``c``."""
        out: dict[int, int] = {}
        for s in self.steps:
            j = c.idx(s.cell)
            out[j] = out.get(j, 0) + s.sign
        return {j: v for j, v in out.items() if v}


def _check_walk(g: Graph, cyc: Sequence[int]) -> None:
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise GraphError("cycle must list at least three distinct vertices")
    for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
        if not g.has_edge(a, b):
            raise GraphError(f"{a}-{b} is not an edge")


def _check_free(stationary: Iterable[int], used: Iterable[int]) -> tuple[int, ...]:
    st = tuple(sorted(stationary))
    if len(set(st)) != len(st):
        raise GraphError("repeated stationary vertex")
    if set(st) & set(used):
        raise GraphError("stationary particles overlap the moving region")
    return st


def ab_loop(g: Graph, cyc: Sequence[int], stationary: Iterable[int] = ()) -> Loop:
    """One particle goes once around ``cyc`` while the others stay fixed."""
    _check_walk(g, cyc)
    st = _check_free(stationary, cyc)
    nxt = list(cyc[1:]) + [cyc[0]]
    return Loop(tuple(Step(st, a, b) for a, b in zip(cyc, nxt)))


def y_loop(g: Graph, center: int, arms: Sequence[int], stationary: Iterable[int] = ()) -> Loop:
    """Hexagonal exchange of two particles on the claw ``center; arms = (a, b, c)``.

    Starts from particles at ``a`` and ``center``.
    """
    a, b, c = arms
    if len({center, a, b, c}) != 4:
        raise GraphError("Y needs four distinct vertices")
    for x in arms:
        if not g.has_edge(center, x):
            raise GraphError(f"{center}-{x} is not an edge")
    st = _check_free(stationary, (center, a, b, c))
    o = center
    moves = [(a, o, b), (b, a, o), (b, o, c), (c, b, o), (c, o, a), (a, c, o)]
    return Loop(tuple(Step(tuple(sorted(st + (x,))), t, h) for x, t, h in moves))


def exchange_loop(g: Graph, cyc: Sequence[int], k: int, stationary: Iterable[int] = ()) -> Loop:
    """Cyclic exchange of ``k`` particles on the cycle ``cyc``.

    The particles start on ``cyc[0..k-1]``. The leading one walks forward
    through the empty arc until it sits just behind the trailing one; then
    every particle steps forward once, front to back. The occupied set is
    restored after ``len(cyc)`` single-edge steps, one full turn in total.
    """
    _check_walk(g, cyc)
    m = len(cyc)
    if not 1 <= k < m:
        raise GraphError("need 1 <= k < cycle length")
    st = _check_free(stationary, cyc)
    occ = set(range(k))
    steps = []

    def hop(i: int, j: int) -> None:
        occ.remove(i)
        rest = tuple(sorted(st + tuple(cyc[x] for x in occ)))
        steps.append(Step(rest, cyc[i], cyc[j]))
        occ.add(j)

    pos = k - 1
    while pos != m - 1:
        hop(pos, pos + 1)
        pos += 1
    for i in range(k - 2, -1, -1):
        hop(i, i + 1)
    hop(m - 1, 0)
    return Loop(tuple(steps))
