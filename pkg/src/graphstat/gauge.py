"""Topological gauge potentials on configuration complexes, in exact turns."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from graphlib import TopologicalSorter
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import ChainComplex, ConfigCell, Loop, Step, build_config_complex, cell1
from .graph import Edge, Graph, GraphError, norm_edge
from .homology import smith_normal_form
from .morse import GradientField, MorseComplex, _vpath_graph


class GaugeError(ValueError):
    """Raised for potentials that break a stated precondition."""


def phase(x: Fraction | int | str) -> Fraction:
    """Reduce to the representative in [0, 1)."""
    return Fraction(x) % 1


@dataclass(frozen=True)
class GaugePotential:
    """Phases on the 1-cells of a complex, stored for the low-to-high direction.

    Reversing a move negates its phase, so antisymmetry holds by construction.
    """

    complex: ChainComplex
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.complex.count(1):
            raise GaugeError("potential must assign a phase to every 1-cell")

    @classmethod
    def zero(cls, c: ChainComplex) -> GaugePotential:
        return cls(c, (Fraction(0),) * c.count(1))

    @classmethod
    def from_map(cls, c: ChainComplex, moves: Mapping[tuple[Iterable[int], tuple[int, int]], Fraction | int | str]) -> GaugePotential:
        """Build from ``{(stationary, (tail, head)): phase}``; unlisted moves get zero."""
        vals = [Fraction(0)] * c.count(1)
        for (st, (t, h)), val in moves.items():
            j = c.idx(cell1(st, (t, h)))
            vals[j] = phase(val if t < h else -Fraction(val))
        return cls(c, tuple(vals))

    def __call__(self, stationary: Iterable[int], tail: int, head: int) -> Fraction:
        j = self.complex.idx(cell1(stationary, (tail, head)))
        v = self.values[j]
        return v if tail < head else phase(-v)

    def __add__(self, other: GaugePotential) -> GaugePotential:
        return GaugePotential(self.complex, tuple(phase(a + b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: GaugePotential) -> GaugePotential:
        return GaugePotential(self.complex, tuple(phase(a - b) for a, b in zip(self.values, other.values)))

    def to_json(self) -> str:
        out = []
        for cell, v in zip(self.complex.cells[1], self.values):
            if v:
                (t, h), = cell.movers
                out.append([list(cell.stationary), [t, h], str(v)])
        return json.dumps(out)


def load_potential(c: ChainComplex, text: str) -> GaugePotential:
    """Read ``[[stationary...], [tail, head], "p/q"]`` entries."""
    try:
        doc = json.loads(text)
        moves = {(tuple(st), (int(t), int(h))): Fraction(val) for st, (t, h), val in doc}
    except (ValueError, TypeError) as exc:
        raise GaugeError(f"malformed potential: {exc}") from None
    try:
        return GaugePotential.from_map(c, moves)
    except KeyError as exc:
        raise GaugeError(f"move {exc} is not a 1-cell of the complex") from None


def chain_flux(omega: GaugePotential, chain: Mapping[int, int]) -> Fraction:
    return phase(sum(omega.values[j] * v for j, v in chain.items()))


def flux(omega: GaugePotential, loop: Loop | Mapping[int, int]) -> Fraction:
    """Total phase collected along a loop, in turns mod 1."""
    chain = loop.chain(omega.complex) if isinstance(loop, Loop) else loop
    return chain_flux(omega, chain)


def is_topological(omega: GaugePotential) -> tuple[bool, list[ConfigCell]]:
    """Zero flux around every 2-cell; returns the offending 2-cells."""
    c = omega.complex
    bad = [c.cells[2][k] for k, col in enumerate(c.d2) if chain_flux(omega, dict(col))]
    return not bad, bad


def _rep(x: Fraction) -> Fraction:
    return Fraction(x) % 1


def decompose_ab_s(omega: GaugePotential) -> tuple[GaugePotential, GaugePotential]:
    """Split a two-particle potential into a position-independent part and the rest.

    The first part averages the phase of each move over every position of
    the spectator; the second is what remains and averages to zero.
    """
    c = omega.complex
    if c.n != 2:
        raise GaugeError("decomposition needs a two-particle potential")
    nv = c.graph.num_vertices
    if nv < 3:
        raise GaugeError("decomposition needs at least three vertices")
    totals: dict[Edge, Fraction] = {}
    for cell, v in zip(c.cells[1], omega.values):
        e = cell.movers[0]
        totals[e] = totals.get(e, Fraction(0)) + _rep(v)
    ab = tuple(phase(totals[cell.movers[0]] / (nv - 2)) for cell in c.cells[1])
    omega_ab = GaugePotential(c, ab)
    return omega_ab, omega - omega_ab


def one_particle_part(omega_ab: GaugePotential) -> dict[Edge, Fraction]:
    """Read the one-particle potential of a position-independent two-particle potential."""
    out: dict[Edge, Fraction] = {}
    for cell, v in zip(omega_ab.complex.cells[1], omega_ab.values):
        e = cell.movers[0]
        if out.setdefault(e, v) != v:
            raise GaugeError(f"phase on {e} depends on the spectator position")
    return out


def is_pure_ab(omega: GaugePotential) -> bool:
    try:
        one_particle_part(omega)
    except GaugeError:
        return False
    return True


def is_pure_statistics(omega: GaugePotential) -> bool:
    """Spectator-averaged phase vanishes (mod 1) on every edge."""
    totals: dict[Edge, Fraction] = {}
    for cell, v in zip(omega.complex.cells[1], omega.values):
        e = cell.movers[0]
        totals[e] = totals.get(e, Fraction(0)) + v
    return all(phase(t) == 0 for t in totals.values())


def _directed(omega: GaugePotential, s: int, x: int, y: int) -> Fraction:
    return omega((s,), x, y)


def subdivide_potential(
    omega: GaugePotential, edge: tuple[int, int], new_vertex: int | None = None
) -> GaugePotential:
    """Equivalent potential after inserting a vertex ``a`` on ``edge = (p, q)``.

    Each half of p-q carries half of the old phase of the move, moves of a
    spectator-at-p or -q particle across the new half-edges get zero, and a
    spectator at ``a`` sees the phases forced by the zero-flux condition on
    the new squares.
    """
    c = omega.complex
    if c.n != 2:
        raise GaugeError("subdivision transport needs a two-particle potential")
    ok, bad = is_topological(omega)
    if not ok:
        raise GaugeError(f"input potential is not topological at {bad[0]}")
    g = c.graph
    p, q = edge
    if not g.has_edge(p, q):
        raise GraphError(f"{p}-{q} is not an edge")
    a = new_vertex if new_vertex is not None else max(g.vertices) + 1
    if a in g.vertices:
        raise GraphError(f"vertex {a} already exists")
    edges = (g.edges - {norm_edge(p, q)}) | {norm_edge(p, a), norm_edge(a, q)}
    ng = Graph.from_edges(edges, sorted(g.vertices + (a,)))
    nc = build_config_complex(ng, 2)

    half = {s: _rep(_directed(omega, s, p, q)) / 2 for s in g.vertices if s not in (p, q)}

    def value(s: int, x: int, y: int) -> Fraction:
        if s != a and a not in (x, y):
            return _directed(omega, s, x, y)
        if s in (p, q):
            return Fraction(0)
        if s != a:
            return half[s] if (x, y) in ((p, a), (a, q)) else -half[s]
        if p not in (x, y) and q not in (x, y):
            return _directed(omega, p, x, y) + half[y] - half[x]
        if x == q:
            return _directed(omega, p, q, y) + half[y]
        if y == q:
            return -(_directed(omega, p, q, x) + half[x])
        if x == p:
            return _directed(omega, q, p, y) - half[y]
        return -(_directed(omega, q, p, x) - half[x])

    vals = []
    for cell in nc.cells[1]:
        (x, y), = cell.movers
        vals.append(phase(value(cell.stationary[0], x, y)))
    return GaugePotential(nc, tuple(vals))


def transport_loop(loop: Loop, edge: tuple[int, int], a: int) -> Loop:
    """Replace every hop across ``edge`` by two hops through ``a``."""
    p, q = edge
    steps = []
    for s in loop.steps:
        if {s.tail, s.head} == {p, q}:
            steps.append(Step(s.stationary, s.tail, a))
            steps.append(Step(s.stationary, a, s.head))
        else:
            steps.append(s)
    return Loop(tuple(steps))


def transport_chain(
    old: ChainComplex, new: ChainComplex, chain: Mapping[int, int], edge: tuple[int, int], a: int
) -> dict[int, int]:
    """Image of a 1-chain under the same substitution as :func:`transport_loop`."""
    p, q = norm_edge(*edge)
    out: dict[int, int] = {}
    for j, v in chain.items():
        cell = old.cells[1][j]
        (x, y), = cell.movers
        if (x, y) == (p, q):
            parts = [(cell1(cell.stationary, (p, a)), v), (cell1(cell.stationary, (a, q)), v if a < q else -v)]
            if a < p:
                parts[0] = (parts[0][0], -v)
        else:
            parts = [(cell, v)]
        for cc, w in parts:
            k = new.idx(cc)
            out[k] = out.get(k, 0) + w
    return {k: v for k, v in out.items() if v}


def subdivide_potential_for(omega: GaugePotential, n: int) -> GaugePotential:
    """Transport a two-particle potential to the graph subdivided for n particles.

    Vertices are inserted in the same order and with the same ids as
    :func:`graphstat.graph.subdivide`.
    """
    g = omega.complex.graph
    k = max(n - 2, 0)
    nxt = max(g.vertices) + 1
    cur = omega
    for e in g.sorted_edges():
        left, right = e
        for _ in range(k):
            cur = subdivide_potential(cur, (left, right), nxt)
            left = nxt
            nxt += 1
    return cur


def lift_to_n(g: Graph, omega1: Mapping[Edge, Fraction], omega_s: GaugePotential, n: int) -> GaugePotential:
    """n-particle potential: one-particle phase plus a statistics phase per spectator."""
    if omega_s.complex.graph != g or omega_s.complex.n != 2:
        raise GaugeError("statistics part must live on the two-particle complex of g")
    if not is_pure_statistics(omega_s):
        raise GaugeError("statistics part does not average to zero")
    ok, bad = is_topological(omega_s)
    if not ok:
        raise GaugeError(f"statistics part is not topological at {bad[0]}")
    nc = build_config_complex(g, n)
    vals = []
    for cell in nc.cells[1]:
        e = cell.movers[0]
        total = Fraction(omega1.get(e, 0))
        for v in cell.stationary:
            total += omega_s.values[omega_s.complex.idx(cell1((v,), e))]
        vals.append(phase(total))
    return GaugePotential(nc, tuple(vals))


def relation_defects(mc: MorseComplex, phases: Sequence[Fraction]) -> list[int]:
    """Critical 2-cells whose Morse boundary has nonzero total phase."""
    bad = []
    for b in range(len(mc.critical[2])):
        if phase(sum(mc.d2[a][b] * phases[a] for a in range(len(mc.critical[1])))):
            bad.append(b)
    return bad


def sample_phases(mc: MorseComplex, rng: random.Random, denominator: int = 12) -> list[Fraction]:
    """Random critical phases annihilating the Morse boundary relations mod 1."""
    n1 = len(mc.critical[1])
    if not mc.critical[2]:
        return [Fraction(rng.randrange(denominator), denominator) for _ in range(n1)]
    rel = [[mc.d2[a][b] for a in range(n1)] for b in range(len(mc.critical[2]))]
    snf = smith_normal_form(rel)
    y = []
    for i in range(n1):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            y.append(Fraction(rng.randrange(denominator), denominator))
        else:
            y.append(Fraction(rng.randrange(d), d))
    return [phase(sum(snf.V[i][k] * y[k] for k in range(n1))) for i in range(n1)]


def random_topological_potential(
    fld: GradientField,
    mc: MorseComplex,
    phases: Sequence[Fraction | int | str] | None = None,
    rng: random.Random | None = None,
) -> GaugePotential:
    """Topological potential with given phases on the critical 1-cells.

    Cells paired with 0-cells get zero, and each cell paired with a 2-cell
    gets the value that makes that 2-cell flux-free. Without ``phases`` a
    random admissible choice is drawn.
    """
    c = fld.complex
    if phases is None:
        phases = sample_phases(mc, rng or random.Random(0))
    ph = [phase(x) for x in phases]
    crit = fld.critical(1)
    if len(ph) != len(crit):
        raise GaugeError(f"expected {len(crit)} phases, got {len(ph)}")
    bad = relation_defects(mc, ph)
    if bad:
        raise GaugeError(f"phases violate the boundary relation of {mc.critical[2][bad[0]]}")
    vals: list[Fraction] = [Fraction(0)] * c.count(1)
    for j, v in zip(crit, ph):
        vals[j] = v
    for j in TopologicalSorter(_vpath_graph(c, fld, 1)).static_order():
        sq = fld.up[1][j]
        if sq < 0:
            continue
        col = c.d2[sq]
        s_j = dict(col)[j]
        vals[j] = phase(-s_j * sum(s * vals[r] for r, s in col if r != j))
    return GaugePotential(c, tuple(vals))


def tight_binding(omega: GaugePotential) -> np.ndarray:
    """Hopping matrix on configurations with entry exp(2 pi i Omega(b -> a)) at (a, b)."""
    c = omega.complex
    h = np.zeros((c.count(0), c.count(0)), dtype=complex)
    for j, col in enumerate(c.d1):
        (head, _), (tail, _) = col
        z = np.exp(2j * np.pi * float(omega.values[j]))
        h[head, tail] = z
        h[tail, head] = np.conj(z)
    if not np.allclose(h, h.conj().T):
        raise AssertionError("hopping matrix is not Hermitian")
    return h
