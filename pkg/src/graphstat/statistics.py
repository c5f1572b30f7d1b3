"""Closed-form counts of anyon and Aharonov-Bohm phases."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .connectivity import block_decomposition, n2_coefficient, tri_decomposition
from .graph import Graph, GraphError, betti_number
from .homology import FGAbelianGroup

__all__ = [
    "StatisticsReport",
    "n1_coefficient",
    "n2_coefficient",
    "predict_h1",
    "star_alpha",
    "star_beta",
    "star_gamma",
]


def star_gamma(n: int, e: int) -> int:
    """First Betti number of the n-particle complex of the unsubdivided star with e arms."""
    if not (1 <= n <= e and e >= 3):
        raise ValueError("need 1 <= n <= e and e >= 3")
    return e * comb(e - 1, n - 1) - comb(e + 1, n) + 1


def star_alpha(k: int, e: int) -> int:
    """Alternating inclusion-exclusion coefficient, evaluated from its defining sum."""
    if not 2 <= k <= e - 1:
        raise ValueError("need 2 <= k <= e - 1")
    total = 0
    for i in range(k - 1):
        m = k - i
        arms = e - i
        total += (-1) ** i * comb(e, i) * (arms * comb(arms - 1, m - 1) - comb(arms + 1, m) + 1)
    return total


def star_beta(n: int, e: int) -> int:
    """Rank of H1 for n particles on a star with e arms."""
    if n < 1 or e < 1:
        raise ValueError("need n >= 1 and e >= 1")
    return comb(n + e - 2, e - 1) * (e - 2) - comb(n + e - 2, e - 2) + 1


def n1_coefficient(mu: int, nu: int, n: int) -> int:
    """Phases contributed by a cut vertex with mu pieces and valency nu."""
    if mu < 2 or nu < mu or n < 1:
        raise ValueError("need mu >= 2, nu >= mu, n >= 1")
    return comb(n + mu - 2, mu - 1) * (nu - 2) - comb(n + mu - 2, mu - 2) - (nu - mu - 1)


@dataclass
class StatisticsReport:
    beta1: int
    n: int
    cut_vertices: list[dict] = field(default_factory=list)
    cut_pairs: list[dict] = field(default_factory=list)
    c2: int = 0
    n1: int = 0
    n2: int = 0
    n3: int = 0
    n3_nonplanar: int = 0
    n3_cycles: int = 0
    group: FGAbelianGroup = FGAbelianGroup(0)

    def to_dict(self) -> dict:
        return {
            "beta1": self.beta1,
            "particles": self.n,
            "cut_vertices": self.cut_vertices,
            "cut_pairs": self.cut_pairs,
            "c2": self.c2,
            "N1": self.n1,
            "N2": self.n2,
            "N3": self.n3,
            "N3_nonplanar": self.n3_nonplanar,
            "N3_cycles": self.n3_cycles,
            "group": self.group.to_dict(),
        }


def predict_h1(g: Graph, n: int, seed: int | None = None) -> StatisticsReport:
    """H1 of the n-particle configuration space from connectivity data alone."""
    if n < 2:
        raise GraphError("need at least two particles")
    b1 = betti_number(g)
    rep = StatisticsReport(b1, n)
    bd = block_decomposition(g)
    for cv in bd.cut_vertices:
        k = n1_coefficient(cv.mu, cv.nu, n)
        rep.cut_vertices.append({"vertex": cv.vertex, "mu": cv.mu, "nu": cv.nu, "N1": k})
        rep.n1 += k
    for block in bd.blocks:
        if block.num_vertices < 3:
            continue
        td = tri_decomposition(block, seed)
        rep.c2 += td.c2
        rep.n2 += td.n2
        rep.n3 += td.n3
        rep.n3_nonplanar += td.n3_nonplanar
        rep.n3_cycles += td.n3_cycles
        for cp in td.cuts:
            rep.cut_pairs.append({"pair": [cp.x, cp.y], "mu": cp.mu, "N2": n2_coefficient(cp.mu)})
    rep.group = FGAbelianGroup(b1 + rep.n1 + rep.n2 + rep.n3, (2,) * rep.n3_nonplanar)
    return rep
