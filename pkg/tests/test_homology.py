import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from graphstat import named
from graphstat.complex import ab_loop, build_config_complex, exchange_loop, y_loop
from graphstat.graph import subdivide
from graphstat.homology import (
    FGAbelianGroup,
    HomologyError,
    cycle_class,
    determinant,
    homology_h0,
    homology_h1,
    matmul,
    smith_normal_form,
)

from conftest import connected_graphs

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def oracle_factors(a):
    """Nonzero invariant factors from sympy."""
    m = Matrix(a)
    if m.is_zero_matrix:
        return []
    return sorted(abs(int(x)) for x in invariant_factors(m, domain=ZZ) if x != 0)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_against_sympy(a):
    res = smith_normal_form(a)
    assert [d for d in res.diagonal if d] == oracle_factors(a)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_transforms(a):
    res = smith_normal_form(a)
    assert matmul(matmul(res.U, a), res.V) == res.D
    assert abs(determinant(res.U)) == 1 and abs(determinant(res.V)) == 1
    diag = [d for d in res.diagonal if d]
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    for i, row in enumerate(res.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


def test_snf_two_by_two_by_minors():
    a = [[2, 4], [6, 8]]
    d1 = gcd(*[x for row in a for x in row])
    d2 = abs(a[0][0] * a[1][1] - a[0][1] * a[1][0]) // d1
    assert list(smith_normal_form(a).diagonal[:2]) == [d1, d2] == [2, 4]


def test_snf_identity_and_zero():
    res = smith_normal_form([[1, 0], [0, 1]])
    assert list(res.diagonal) == [1, 1]
    assert res.U == [[1, 0], [0, 1]] and res.V == [[1, 0], [0, 1]]
    assert not any(smith_normal_form([[0, 0], [0, 0]]).diagonal)


def test_group_canonical_form():
    assert FGAbelianGroup(2, (1, 2)).torsion == (2,)
    assert str(FGAbelianGroup(6, (2,))) == "Z^6 + Z_2"
    assert FGAbelianGroup(0).to_dict() == {"rank": 0, "torsion": []}
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (2, 3))


def dense(c):
    d1 = [[0] * c.count(1) for _ in range(c.count(0))]
    for j, col in enumerate(c.d1):
        for r, s in col:
            d1[r][j] = s
    d2 = [[0] * c.count(2) for _ in range(c.count(1))]
    for j, col in enumerate(c.d2):
        for r, s in col:
            d2[r][j] = s
    return d1, d2


def oracle_h1(c):
    d1, d2 = dense(c)
    r1 = Matrix(d1).rank() if c.count(1) else 0
    f2 = oracle_factors(d2) if c.count(2) else []
    return FGAbelianGroup(c.count(1) - r1 - len(f2), tuple(f for f in f2 if f > 1))


@settings(max_examples=30, deadline=None)
@given(connected_graphs(max_vertices=6, max_extra=4))
def test_h1_against_dense_oracle(g):
    c = build_config_complex(g, 2)
    grp, _ = homology_h1(c)
    assert grp == oracle_h1(c)


@pytest.mark.parametrize(
    "g, expected",
    [
        (named.triangle(), FGAbelianGroup(1)),
        (named.complete(5), FGAbelianGroup(6, (2,))),
        (named.complete_bipartite(3, 3), FGAbelianGroup(4, (2,))),
        (named.bowtie(), FGAbelianGroup(4)),
    ],
)
def test_h1_known_groups(g, expected):
    c = build_config_complex(g, 2)
    grp, _ = homology_h1(c)
    assert grp == expected == oracle_h1(c)


@pytest.mark.parametrize("name", ["lasso", "k4", "k5", "bowtie", "octahedron"])
def test_basis_generators_are_unit_vectors(name):
    g = named.NAMED[name]()
    grp, b = homology_h1(build_config_complex(g, 2))
    for i, gen in enumerate(b.free):
        free, tors = cycle_class(b, gen)
        assert free == tuple(int(k == i) for k in range(grp.rank))
        assert all(t == 0 for t in tors)
    for i, gen in enumerate(b.torsion):
        free, tors = cycle_class(b, gen)
        assert free == (0,) * grp.rank
        assert tors == tuple(int(k == i) for k in range(len(b.torsion)))


@pytest.mark.parametrize("name", ["lasso", "k5", "k33", "w4"])
def test_boundaries_have_zero_class(name):
    c = build_config_complex(named.NAMED[name](), 2)
    grp, b = homology_h1(c)
    for col in c.d2:
        free, tors = cycle_class(b, dict(col))
        assert not any(free) and not any(tors)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_class_is_invariant_under_adding_boundaries(seed):
    rng = random.Random(seed)
    g = named.complete(5)
    c = build_config_complex(g, 2)
    _, b = homology_h1(c)
    loop = y_loop(g, 1, (2, 3, 4)) if rng.random() < 0.5 else ab_loop(g, [1, 2, 3], [5])
    chain = dict(loop.chain(c))
    for _ in range(rng.randint(1, 5)):
        col = c.d2[rng.randrange(c.count(2))]
        k = rng.choice([-2, -1, 1, 2])
        for r, s in col:
            chain[r] = chain.get(r, 0) + k * s
    assert cycle_class(b, chain) == cycle_class(b, loop)


def test_k5_y_loop_is_torsion():
    g = named.complete(5)
    _, b = homology_h1(build_config_complex(g, 2))
    free, tors = cycle_class(b, y_loop(g, 1, (2, 3, 4)))
    doubled = {j: 2 * v for j, v in y_loop(g, 1, (2, 3, 4)).chain(b.complex).items()}
    assert tors == (1,)
    assert cycle_class(b, doubled)[1] == (0,)
    assert cycle_class(b, doubled)[0] == tuple(2 * x for x in free)


def test_non_cycle_rejected():
    c = build_config_complex(named.triangle(), 2)
    _, b = homology_h1(c)
    with pytest.raises(HomologyError):
        cycle_class(b, {0: 1})


@pytest.mark.parametrize("name", sorted(named.NAMED))
def test_h0_is_z(name):
    c = build_config_complex(named.NAMED[name](), 2)
    assert homology_h0(c) == FGAbelianGroup(1)


def test_exchange_triangle_class_is_generator():
    g = named.triangle()
    _, b = homology_h1(build_config_complex(g, 2))
    assert abs(cycle_class(b, exchange_loop(g, [1, 2, 3], 2))[0][0]) == 1


@pytest.mark.parametrize("name", ["lasso", "k4", "bowtie"])
def test_euler_characteristic_consistent(name):
    """chi = rank H0 - rank H1 + rank H2, with rank H2 from the kernel of d2."""
    c = build_config_complex(named.NAMED[name](), 2)
    grp, _ = homology_h1(c)
    _, d2 = dense(c)
    h2 = c.count(2) - (Matrix(d2).rank() if c.count(2) else 0)
    assert c.euler_characteristic() == 1 - grp.rank + h2


def test_h1_three_particles_subdivided_k4():
    h, _ = subdivide(named.complete(4), 3)
    grp, _ = homology_h1(build_config_complex(h, 3))
    assert grp == FGAbelianGroup(4)
