"""Exact integer homology through Smith normal form."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complex import ChainComplex, Loop, check_dd_zero

Matrix = list[list[int]]


class HomologyError(ValueError):
    """Raised for inconsistent complexes or chains that are not cycles."""


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^rank plus cyclic torsion factors with each entry dividing the next."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        tors = tuple(t for t in self.torsion if t != 1)
        if any(t < 2 for t in tors):
            raise ValueError("torsion factors must be at least 2")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError("torsion factors must form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_factors(cls, rank: int, factors: Iterable[int]) -> FGAbelianGroup:
        return cls(rank, tuple(sorted(abs(f) for f in factors if abs(f) > 1)))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] if cols else [] for row in a]


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D`` with ``D`` diagonal, ``diagonal`` its entries."""

    diagonal: tuple[int, ...]
    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form with unimodular transforms, pivoting on the smallest entry."""
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            small = None
            for i in range(t + 1, m):
                if A[i][t] and (small is None or abs(A[i][t]) < small[0]):
                    small = (abs(A[i][t]), i, None)
            for j in range(t + 1, n):
                if A[t][j] and (small is None or abs(A[t][j]) < small[0]):
                    small = (abs(A[t][j]), None, j)
            if small is not None:
                done = False
                if small[1] is not None:
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                done = False
            if done:
                break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SNFResult(diag, U, V, A)


def invert_unimodular(u: Matrix) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = len(u)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        # integer row reduction: Euclid on column c below the diagonal
        while True:
            nz = [r for r in range(c, n) if aug[r][c]]
            if not nz:
                raise HomologyError("matrix is singular")
            piv = min(nz, key=lambda r: abs(aug[r][c]))
            aug[c], aug[piv] = aug[piv], aug[c]
            clean = True
            for r in range(c + 1, n):
                if aug[r][c]:
                    q = aug[r][c] // aug[c][c]
                    aug[r] = [x - q * y for x, y in zip(aug[r], aug[c])]
                    if aug[r][c]:
                        clean = False
            if clean:
                break
        if abs(aug[c][c]) != 1:
            raise HomologyError("matrix is not unimodular")
        if aug[c][c] < 0:
            aug[c] = [-x for x in aug[c]]
    for c in range(n - 1, -1, -1):
        for r in range(c):
            if aug[r][c]:
                q = aug[r][c]
                aug[r] = [x - q * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


class SparseReduction:
    """Row reduction of a sparse integer matrix by unit pivots.

    Unit pivots are chosen by a Markowitz-style cost. Row operations are
    recorded so that the row transform can be applied to vectors. What is
    left once no unit entry remains is reduced densely by
    :func:`smith_normal_form`.
    """

    def __init__(self, nrows: int, columns: Sequence[Mapping[int, int]]) -> None:
        self.nrows = nrows
        rows: dict[int, dict[int, int]] = {}
        cols: dict[int, set[int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
                    cols.setdefault(j, set()).add(i)
        self.ops: list[tuple[int, int, int]] = []
        self.pivot_rows: list[int] = []
        self._eliminate(rows, cols)
        rest_rows = sorted(i for i, r in rows.items() if r)
        rest_cols = sorted(j for j, s in cols.items() if s)
        self.rest_rows = rest_rows
        self.rest_cols = rest_cols
        pos = {j: k for k, j in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for a, i in enumerate(rest_rows):
            for j, v in rows[i].items():
                dense[a][pos[j]] = v
        self.rest = smith_normal_form(dense) if rest_rows and rest_cols else None
        pivoted = set(self.pivot_rows) | set(rest_rows)
        self.zero_rows = [i for i in range(nrows) if i not in pivoted]

    def _eliminate(self, rows: dict[int, dict[int, int]], cols: dict[int, set[int]]) -> None:
        heap: list[tuple[int, int]] = [(len(s), j) for j, s in cols.items()]
        heapq.heapify(heap)
        while heap:
            cnt, j = heapq.heappop(heap)
            s = cols.get(j)
            if not s or len(s) != cnt:
                continue
            units = [i for i in s if abs(rows[i][j]) == 1]
            if not units:
                continue
            i = min(units, key=lambda r: (len(rows[r]), r))
            p = rows[i][j]
            prow = rows[i]
            touched = set(prow)
            for k in sorted(s):
                if k == i:
                    continue
                f = rows[k][j] * p
                self.ops.append((k, i, f))
                rk = rows[k]
                for jj, v in prow.items():
                    nv = rk.get(jj, 0) - f * v
                    if nv:
                        if jj not in rk:
                            cols[jj].add(k)
                        rk[jj] = nv
                    elif jj in rk:
                        del rk[jj]
                        cols[jj].discard(k)
            for jj in prow:
                cols[jj].discard(i)
            rows[i] = {}
            del cols[j]
            self.pivot_rows.append(i)
            for jj in touched:
                if jj != j and jj in cols and cols[jj]:
                    heapq.heappush(heap, (len(cols[jj]), jj))

    @property
    def rank(self) -> int:
        return len(self.pivot_rows) + (self.rest.rank if self.rest else 0)

    def factors(self) -> list[int]:
        """Nonzero invariant factors, units included."""
        out = [1] * len(self.pivot_rows)
        if self.rest:
            out += [d for d in self.rest.diagonal if d]
        return out

    def transform(self, w: Sequence[int]) -> list[int]:
        """Apply the recorded row operations to a vector."""
        x = list(w)
        for k, i, f in self.ops:
            if x[i]:
                x[k] -= f * x[i]
        return x

    def untransform(self, x: Sequence[int]) -> list[int]:
        w = list(x)
        for k, i, f in reversed(self.ops):
            if w[i]:
                w[k] += f * w[i]
        return w


@dataclass
class HomologyBasis:
    """Generators of H1 as explicit 1-chains, and the data to read coordinates.

    ``free`` and ``torsion`` are lists of generators (dicts from 1-cell index
    to coefficient); ``orders`` are the torsion orders.
    """

    complex: ChainComplex
    free: list[dict[int, int]]
    torsion: list[dict[int, int]]
    orders: list[int]
    _nontree: list[int]
    _red: SparseReduction
    _rest_u: Matrix | None
    _free_slots: list[tuple[str, int]]
    _tors_slots: list[int]

    def coordinates(self, chain: Mapping[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        c = self.complex
        acc: dict[int, int] = {}
        for j, v in chain.items():
            for r, s in c.d1[j]:
                acc[r] = acc.get(r, 0) + s * v
        if any(acc.values()):
            raise HomologyError("chain is not a cycle")
        w = [chain.get(j, 0) for j in self._nontree]
        x = self._red.transform(w)
        rest = [x[i] for i in self._red.rest_rows]
        if self._rest_u is not None:
            y = [sum(a * b for a, b in zip(row, rest)) for row in self._rest_u]
        else:
            y = rest
        free = []
        for kind, i in self._free_slots:
            free.append(x[i] if kind == "zero" else y[i])
        tors = tuple(y[i] % d for i, d in zip(self._tors_slots, self.orders))
        return tuple(free), tors


def _spanning_forest(c: ChainComplex) -> tuple[list[int], list[int], list[tuple[int, int, int]]]:
    """Tree 1-cells, non-tree 1-cells and a post-order of (vertex, tree edge, sign)."""
    n0 = c.count(0)
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n0)]
    for j, col in enumerate(c.d1):
        (h, sh), (t, st) = col
        adj[h].append((t, j, sh))
        adj[t].append((h, j, st))
    seen = [False] * n0
    tree: list[int] = []
    post: list[tuple[int, int, int]] = []
    for root in range(n0):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, -1, 0, iter(adj[root]))]
        while stack:
            v, pe, ps, it = stack[-1]
            for w, j, _ in it:
                if not seen[w]:
                    seen[w] = True
                    tree.append(j)
                    sign = dict((r, s) for r, s in c.d1[j])[w]
                    stack.append((w, j, sign, iter(adj[w])))
                    break
            else:
                stack.pop()
                if pe >= 0:
                    post.append((v, pe, ps))
    tset = set(tree)
    nontree = [j for j in range(c.count(1)) if j not in tset]
    return tree, nontree, post


def _close_cycle(c: ChainComplex, partial: Mapping[int, int], post: list[tuple[int, int, int]]) -> dict[int, int]:
    """Add tree cells so that the chain becomes a cycle."""
    acc: dict[int, int] = {}
    for j, v in partial.items():
        for r, s in c.d1[j]:
            acc[r] = acc.get(r, 0) + s * v
    out = {j: v for j, v in partial.items() if v}
    for v, j, sign in post:
        b = acc.get(v, 0)
        if b:
            coef = -b * sign
            out[j] = coef
            for r, s in c.d1[j]:
                acc[r] = acc.get(r, 0) + s * coef
    return out


def homology_h1(c: ChainComplex, verify: bool = True) -> tuple[FGAbelianGroup, HomologyBasis]:
    """H1 = ker d1 / im d2 with generators and a coordinate map."""
    if verify and not check_dd_zero(c):
        raise HomologyError("boundary maps do not compose to zero")
    _, nontree, post = _spanning_forest(c)
    row_of = {j: i for i, j in enumerate(nontree)}
    columns = [{row_of[r]: s for r, s in col if r in row_of} for col in c.d2]
    red = SparseReduction(len(nontree), columns)
    k = len(nontree)
    rest = red.rest
    rest_u = rest.U if rest else None
    free_slots: list[tuple[str, int]] = []
    tors_slots: list[int] = []
    orders: list[int] = []
    if rest:
        for i, d in enumerate(rest.diagonal):
            if d > 1:
                tors_slots.append(i)
                orders.append(d)
        r = rest.rank
        free_slots += [("rest", i) for i in range(r, len(red.rest_rows))]
    else:
        free_slots += [("rest", i) for i in range(len(red.rest_rows))]
    free_slots += [("zero", i) for i in red.zero_rows]
    rest_uinv = invert_unimodular(rest_u) if rest_u else None

    def generator(kind: str, i: int) -> dict[int, int]:
        x = [0] * k
        if kind == "zero":
            x[i] = 1
        else:
            col = [row[i] for row in rest_uinv] if rest_uinv else [int(a == i) for a in range(len(red.rest_rows))]
            for a, r in enumerate(red.rest_rows):
                x[r] = col[a]
        w = red.untransform(x)
        return _close_cycle(c, {nontree[a]: v for a, v in enumerate(w) if v}, post)

    free = [generator(kind, i) for kind, i in free_slots]
    tors = [generator("rest", i) for i in tors_slots]
    group = FGAbelianGroup(len(free_slots), tuple(orders))
    basis = HomologyBasis(c, free, tors, orders, nontree, red, rest_u, free_slots, tors_slots)
    return group, basis


def homology_h0(c: ChainComplex) -> FGAbelianGroup:
    """H0 = C0 / im d1 by the same sparse reduction."""
    red = SparseReduction(c.count(0), [dict(col) for col in c.d1])
    return FGAbelianGroup.from_factors(c.count(0) - red.rank, red.factors())


def cycle_class(b: HomologyBasis, loop: Loop | Mapping[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Free coordinates and torsion residues of a loop or 1-cycle."""
    chain = loop.chain(b.complex) if isinstance(loop, Loop) else loop
    return b.coordinates(chain)


def group_from_matrices(d1: Sequence[Sequence[int]], d2: Sequence[Sequence[int]], n1: int) -> FGAbelianGroup:
    """ker d1 / im d2 for small dense matrices (``n1`` = number of middle cells)."""
    r1 = smith_normal_form(d1).rank if d1 and n1 else 0
    s2 = smith_normal_form(d2) if d2 and d2[0] else None
    r2 = s2.rank if s2 else 0
    factors = [d for d in s2.diagonal if d] if s2 else []
    return FGAbelianGroup.from_factors(n1 - r1 - r2, factors)
