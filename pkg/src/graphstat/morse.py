"""Discrete Morse functions on one- and two-particle configuration complexes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Mapping, Sequence

from .complex import ChainComplex, ConfigCell, build_config_complex, cell1, cell2, config
from .graph import Edge, Graph, SpanningTree
from .homology import FGAbelianGroup, group_from_matrices

CellRef = tuple[int, int]  # (dimension, index)


class MorseError(AssertionError):
    """A construction that should yield a valid Morse function did not."""


@dataclass(frozen=True)
class MorseFunction:
    complex: ChainComplex
    values: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __call__(self, cell: ConfigCell) -> int:
        return self.values[cell.dim][self.complex.idx(cell)]

    def value(self, dim: int, i: int) -> int:
        return self.values[dim][i]


def cofaces(c: ChainComplex) -> tuple[list[list[tuple[int, int]]], list[list[tuple[int, int]]]]:
    """For each 0-cell and 1-cell, the signed cofaces one dimension up."""
    up0: list[list[tuple[int, int]]] = [[] for _ in range(c.count(0))]
    up1: list[list[tuple[int, int]]] = [[] for _ in range(c.count(1))]
    for j, col in enumerate(c.d1):
        for r, s in col:
            up0[r].append((j, s))
    for j, col in enumerate(c.d2):
        for r, s in col:
            up1[r].append((j, s))
    return up0, up1


def perfect_morse_f1(g: Graph, t: SpanningTree) -> MorseFunction:
    """Perfect Morse function on the graph itself.

    The vertex with label k gets 2k - 2, a tree edge the larger value of its
    ends, a deleted edge that value plus two.
    """
    c = build_config_complex(g, 1)
    vval = {v: 2 * t.labels[v] - 2 for v in g.vertices}
    v0 = tuple(vval[cell.stationary[0]] for cell in c.cells[0])
    v1 = []
    for cell in c.cells[1]:
        e = cell.movers[0]
        top = max(vval[e[0]], vval[e[1]])
        v1.append(top if e in t.tree_edges else top + 2)
    return MorseFunction(c, (v0, tuple(v1), ()))


def _f1_tables(f1: MorseFunction) -> tuple[dict[int, int], dict[Edge, int]]:
    c = f1.complex
    vv = {cell.stationary[0]: f1.values[0][i] for i, cell in enumerate(c.cells[0])}
    ev = {cell.movers[0]: f1.values[1][i] for i, cell in enumerate(c.cells[1])}
    return vv, ev


def trial_f2(c: ChainComplex, f1: MorseFunction) -> MorseFunction:
    """Sum of the one-particle values over the factors of each cell."""
    vv, ev = _f1_tables(f1)
    vals = tuple(
        tuple(sum(vv[v] for v in cell.stationary) + sum(ev[e] for e in cell.movers) for cell in cells)
        for cells in c.cells
    )
    return MorseFunction(c, vals)  # type: ignore[arg-type]


@dataclass
class FixLog:
    """Cells raised by one unit while repairing the trial function."""

    step1: list[tuple[ConfigCell, ConfigCell]] = field(default_factory=list)  # (2-cell, 1-cell)
    step2: list[tuple[ConfigCell, ConfigCell]] = field(default_factory=list)  # (0-cell, 1-cell)

    def raised_1cells(self) -> list[ConfigCell]:
        return [b for _, b in self.step1] + [b for _, b in self.step2]


def _choose(u: int, v: int, t: SpanningTree, policy: str, rng: random.Random | None) -> tuple[int, int]:
    """Order (u, v) so that u x e(v) is the cell to raise."""
    lu, lv = t.labels[u], t.labels[v]
    if policy == "lower":
        pick = lu < lv
    elif policy == "upper":
        pick = lu > lv
    elif policy == "random":
        pick = (rng or random.Random(0)).random() < 0.5
    else:
        raise ValueError(f"unknown policy {policy!r}")
    return (u, v) if pick else (v, u)


def fix_to_morse(
    c: ChainComplex,
    trial: MorseFunction,
    t: SpanningTree,
    policy: str = "lower",
    seed: int | None = None,
) -> tuple[MorseFunction, FixLog]:
    """Raise the trial function on the defects to obtain a discrete Morse function.

    Step 1 treats pairs of disjoint tree edges e(u), e(v): the 2-cell
    e(u) x e(v) and one of u x e(v), v x e(u) go up by one. Step 2 treats
    siblings u, v: one of u x e(v), v x e(u) goes up by one. ``policy``
    picks the raised cell: ``lower`` keeps the smaller label stationary,
    ``upper`` the larger, ``random`` flips a seeded coin.
    """
    if c.n != 2:
        raise ValueError("the repair is defined for two particles")
    rng = random.Random(seed) if policy == "random" else None
    vals = [list(v) for v in trial.values]
    log = FixLog()
    others = sorted((v for v in t.labels if v != t.root), key=t.labels.__getitem__)
    for a_pos, u in enumerate(others):
        for v in others[a_pos + 1 :]:
            eu, ev = t.e(u), t.e(v)
            if set(eu) & set(ev):
                continue
            sq = cell2((), eu, ev)
            vals[2][c.idx(sq)] += 1
            x, y = _choose(u, v, t, policy, rng)
            one = cell1((x,), t.e(y))
            vals[1][c.idx(one)] += 1
            log.step1.append((sq, one))
    for a_pos, u in enumerate(others):
        for v in others[a_pos + 1 :]:
            if t.tau(u) != t.tau(v):
                continue
            x, y = _choose(u, v, t, policy, rng)
            one = cell1((x,), t.e(y))
            vals[1][c.idx(one)] += 1
            log.step2.append((config((u, v)), one))
    f = MorseFunction(c, tuple(tuple(v) for v in vals))  # type: ignore[arg-type]
    ok, bad = is_discrete_morse(c, f)
    if not ok:
        raise MorseError(f"repaired function violates the Morse conditions at {bad[:5]}")
    return f, log


@dataclass(frozen=True)
class Violation:
    cell: ConfigCell
    kind: str  # "cofaces", "faces" or "both"
    witnesses: tuple[ConfigCell, ...]


def is_discrete_morse(c: ChainComplex, f: MorseFunction) -> tuple[bool, list[Violation]]:
    """Check that no cell has two low cofaces or two high faces, or one of each."""
    up0, up1 = cofaces(c)
    ups = (up0, up1, [[] for _ in range(c.count(2))])
    downs = ([[] for _ in range(c.count(0))], c.d1, c.d2)
    out = []
    for dim in range(3):
        for i, cell in enumerate(c.cells[dim]):
            fv = f.values[dim][i]
            lo = [j for j, _ in ups[dim][i] if f.values[dim + 1][j] <= fv] if dim < 2 else []
            hi = [j for j, _ in downs[dim][i] if f.values[dim - 1][j] >= fv] if dim > 0 else []
            if len(lo) > 1:
                out.append(Violation(cell, "cofaces", tuple(c.cells[dim + 1][j] for j in lo)))
            if len(hi) > 1:
                out.append(Violation(cell, "faces", tuple(c.cells[dim - 1][j] for j in hi)))
            if lo and hi:
                wit = tuple(c.cells[dim + 1][j] for j in lo) + tuple(c.cells[dim - 1][j] for j in hi)
                out.append(Violation(cell, "both", wit))
    return not out, out


@dataclass
class GradientField:
    """Matching of cells into (p, p+1) pairs; unmatched cells are critical.

    ``up[p][i]`` is the (p+1)-cell paired with p-cell ``i`` (or -1) and
    ``down[p][i]`` the (p-1)-cell paired with p-cell ``i`` (or -1).
    """

    complex: ChainComplex
    pairs: list[tuple[int, int, int]]  # (p, lower index, upper index)
    up: tuple[list[int], list[int], list[int]]
    down: tuple[list[int], list[int], list[int]]

    def critical(self, dim: int) -> list[int]:
        return [i for i in range(self.complex.count(dim)) if self.up[dim][i] < 0 and self.down[dim][i] < 0]

    def critical_cells(self, dim: int) -> list[ConfigCell]:
        return [self.complex.cells[dim][i] for i in self.critical(dim)]


def _vpath_graph(c: ChainComplex, fld: GradientField, p: int) -> dict[int, set[int]]:
    """Successors of p-cells along V-paths."""
    succ: dict[int, set[int]] = {}
    for i in range(c.count(p)):
        j = fld.up[p][i]
        if j < 0:
            succ[i] = set()
            continue
        succ[i] = {r for r, _ in c.boundary(p + 1, j) if r != i}
    return succ


def is_acyclic(c: ChainComplex, fld: GradientField) -> bool:
    for p in (0, 1):
        try:
            tuple(TopologicalSorter(_vpath_graph(c, fld, p)).static_order())
        except CycleError:
            return False
    return True


def gradient_field(c: ChainComplex, f: MorseFunction) -> GradientField:
    """Pair each cell with its unique wrong-way neighbour."""
    ok, bad = is_discrete_morse(c, f)
    if not ok:
        raise MorseError(f"not a discrete Morse function: {bad[:3]}")
    up: tuple[list[int], list[int], list[int]] = tuple([-1] * c.count(d) for d in range(3))  # type: ignore[assignment]
    down: tuple[list[int], list[int], list[int]] = tuple([-1] * c.count(d) for d in range(3))  # type: ignore[assignment]
    pairs = []
    for p in (1, 2):
        for j in range(c.count(p)):
            for r, _ in c.boundary(p, j):
                if f.values[p - 1][r] >= f.values[p][j]:
                    up[p - 1][r] = j
                    down[p][j] = r
                    pairs.append((p - 1, r, j))
    fld = GradientField(c, pairs, up, down)
    if not is_acyclic(c, fld):
        raise MorseError("gradient field has a closed V-path")
    return fld


@dataclass
class MorseComplex:
    """Critical cells and the boundary between them.

    ``d1[a][b]`` is the coefficient of critical 0-cell ``a`` in the boundary
    of critical 1-cell ``b``; ``d2`` likewise for dimensions 1 and 2.
    """

    critical: tuple[list[ConfigCell], list[ConfigCell], list[ConfigCell]]
    d1: list[list[int]]
    d2: list[list[int]]


def _vpath_weights(c: ChainComplex, fld: GradientField, p: int) -> list[dict[int, int]]:
    """Signed count of V-paths from each p-cell to each critical p-cell."""
    succ = _vpath_graph(c, fld, p)
    weights: list[dict[int, int]] = [{} for _ in range(c.count(p))]
    for i in TopologicalSorter(succ).static_order():
        if fld.down[p][i] >= 0:
            continue
        j = fld.up[p][i]
        if j < 0:
            weights[i] = {i: 1}
            continue
        col = c.boundary(p + 1, j)
        s_i = dict(col)[i]
        acc: dict[int, int] = {}
        for r, s in col:
            if r == i:
                continue
            m = -s * s_i
            for k, w in weights[r].items():
                acc[k] = acc.get(k, 0) + m * w
        weights[i] = {k: w for k, w in acc.items() if w}
    return weights


def morse_complex(c: ChainComplex, fld: GradientField) -> MorseComplex:
    """Boundary of critical cells as signed sums over V-paths."""
    crit = tuple(fld.critical(d) for d in range(3))
    pos = [{i: a for a, i in enumerate(cs)} for cs in crit]
    mats = []
    for p in (0, 1):
        w = _vpath_weights(c, fld, p)
        mat = [[0] * len(crit[p + 1]) for _ in crit[p]]
        for b, j in enumerate(crit[p + 1]):
            for r, s in c.boundary(p + 1, j):
                for k, v in w[r].items():
                    mat[pos[p][k]][b] += s * v
        mats.append(mat)
    cells = tuple([c.cells[d][i] for i in crit[d]] for d in range(3))
    mc = MorseComplex(cells, mats[0], mats[1])  # type: ignore[arg-type]
    if any(
        sum(mats[0][a][k] * mats[1][k][b] for k in range(len(crit[1]))) for a in range(len(crit[0])) for b in range(len(crit[2]))
    ):
        raise MorseError("Morse boundary does not square to zero")
    return mc


def flow_to_critical(c: ChainComplex, fld: GradientField, chain: Mapping[int, int]) -> dict[int, int]:
    """Push a 1-cycle along the gradient flow and read its critical 1-cells.

    Cells paired with 2-cells are traded for the rest of that 2-cell's
    boundary, furthest upstream along V-paths first, until only critical
    cells and cells paired with 0-cells remain.
    """
    cur = {j: v for j, v in chain.items() if v}
    order = {i: k for k, i in enumerate(TopologicalSorter(_vpath_graph(c, fld, 1)).static_order())}
    while True:
        tails = [j for j in cur if fld.up[1][j] >= 0]
        if not tails:
            break
        j = max(tails, key=order.__getitem__)
        coef = cur[j]
        col = c.d2[fld.up[1][j]]
        s_j = dict(col)[j]
        for r, s in col:
            cur[r] = cur.get(r, 0) - coef * s_j * s
        cur = {k: v for k, v in cur.items() if v}
    return {j: v for j, v in cur.items() if fld.down[1][j] < 0}


def morse_h1(mc: MorseComplex) -> FGAbelianGroup:
    return group_from_matrices(mc.d1, mc.d2, len(mc.critical[1]))


@dataclass
class CriticalReport:
    ok: bool
    expected: tuple[set[ConfigCell], set[ConfigCell], set[ConfigCell]]
    actual: tuple[set[ConfigCell], set[ConfigCell], set[ConfigCell]]

    def mismatches(self) -> list[tuple[int, ConfigCell, str]]:
        out = []
        for d in range(3):
            out += [(d, x, "missing") for x in sorted(self.expected[d] - self.actual[d])]
            out += [(d, x, "unexpected") for x in sorted(self.actual[d] - self.expected[d])]
        return out


def expected_critical(g: Graph, t: SpanningTree, log: FixLog) -> tuple[set[ConfigCell], set[ConfigCell], set[ConfigCell]]:
    """Critical cells predicted from the tree and the repair choices alone."""
    second = min((v for v in t.labels if t.labels[v] == 2), default=None)
    c0 = {config((t.root, second))} if second is not None else set()
    c1 = set()
    for e in t.deleted_edges:
        for v in g.vertices:
            if v in e:
                continue
            if v == t.root or t.tau(v) in e:
                c1.add(cell1((v,), e))
    c1 |= {one for _, one in log.step2}
    c2 = set()
    dl = t.deleted_edges
    for a in range(len(dl)):
        for b in range(a + 1, len(dl)):
            if not set(dl[a]) & set(dl[b]):
                c2.add(cell2((), dl[a], dl[b]))
    return c0, c1, c2


def classify_critical(c: ChainComplex, fld: GradientField, t: SpanningTree, log: FixLog) -> CriticalReport:
    exp = expected_critical(c.graph, t, log)
    act = tuple(set(fld.critical_cells(d)) for d in range(3))
    return CriticalReport(exp == act, exp, act)  # type: ignore[arg-type]


@dataclass
class MorsePipeline:
    tree: SpanningTree
    f1: MorseFunction
    trial: MorseFunction
    f2: MorseFunction
    log: FixLog
    field: GradientField
    complex: MorseComplex
    h1: FGAbelianGroup


def run_morse(
    g: Graph,
    policy: str = "lower",
    seed: int | None = None,
    tree_edges: Sequence[tuple[int, int]] | None = None,
    c: ChainComplex | None = None,
) -> MorsePipeline:
    """Tree, perfect f1, trial f2, repair, gradient field, Morse complex and H1."""
    from .graph import spanning_tree

    t = spanning_tree(g, tree_edges)
    f1 = perfect_morse_f1(g, t)
    c = c or build_config_complex(g, 2)
    tr = trial_f2(c, f1)
    f2, log = fix_to_morse(c, tr, t, policy, seed)
    fld = gradient_field(c, f2)
    mc = morse_complex(c, fld)
    return MorsePipeline(t, f1, tr, f2, log, fld, mc, morse_h1(mc))


__all__ = [
    "CriticalReport",
    "FixLog",
    "GradientField",
    "MorseComplex",
    "MorseError",
    "MorseFunction",
    "MorsePipeline",
    "Violation",
    "classify_critical",
    "expected_critical",
    "fix_to_morse",
    "flow_to_critical",
    "gradient_field",
    "is_acyclic",
    "is_discrete_morse",
    "morse_complex",
    "morse_h1",
    "perfect_morse_f1",
    "run_morse",
    "trial_f2",
]
