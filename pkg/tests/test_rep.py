from __future__ import annotations

import itertools
from math import comb, factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from monostab.linalg import GF, QQ, ZZ, IntMatrix
from monostab.rep import (
    GradedBettiTable,
    KunnethModule,
    SigmaModule,
    SubgroupSpec,
    act_on_labels,
    compose,
    fiber_module,
    from_cycles,
    graded_power_module,
    identity,
    invariants,
    inverse,
    permutation_module,
    sign,
    sign_module,
    transposition,
    trivial_module,
    unit_insertion,
)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(range(n)).map(tuple))


@given(perms)
def test_perm_group_laws(g):
    n = len(g)
    assert compose(g, inverse(g)) == identity(n)
    assert compose(inverse(g), g) == identity(n)
    # sign via inversion count
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if g[i] > g[j])
    assert sign(g) == (-1) ** inv


def test_from_cycles():
    assert from_cycles(3, [(1, 2, 3)]) == (1, 2, 0)
    assert from_cycles(4, [(1, 2), (3, 4)]) == (1, 0, 3, 2)
    with pytest.raises(ValueError):
        from_cycles(3, [(1, 1)])
    with pytest.raises(ValueError):
        from_cycles(3, [(1, 4)])
    with pytest.raises(ValueError):
        from_cycles(3, [(1, 2), (2, 3)])


def test_subgroup_orders():
    assert SubgroupSpec.symmetric(4).order == 24
    assert SubgroupSpec.trivial(4).order == 1
    assert SubgroupSpec.young([2, 1, 2]).order == 4
    cyc = SubgroupSpec.generated_by(4, [from_cycles(4, [(1, 2, 3, 4)])])
    assert cyc.order == 4
    assert cyc.is_subgroup_of(SubgroupSpec.symmetric(4))
    assert not SubgroupSpec.symmetric(4).is_subgroup_of(cyc)


@pytest.mark.parametrize(
    "group",
    [
        SubgroupSpec.symmetric(4),
        SubgroupSpec.young([2, 2]),
        SubgroupSpec.generated_by(4, [from_cycles(4, [(1, 2, 3, 4)])]),
        SubgroupSpec.generated_by(4, [from_cycles(4, [(1, 2)]), from_cycles(4, [(3, 4)])]),
    ],
)
def test_orbit_reps_partition_labellings(group):
    reps = group.orbit_reps()
    assert len(reps) * group.order == factorial(group.n)
    for t in itertools.permutations(range(group.n)):
        rep, g = group.orbit_rep(t)
        assert rep in reps
        assert group.contains(g)
        assert act_on_labels(g, rep) == t


def test_coset_reps_cover_group():
    H = SubgroupSpec.symmetric(4)
    G = SubgroupSpec.young([2, 1, 1])
    reps = H.left_coset_reps(G)
    assert len(reps) == H.order // G.order
    covered = {compose(k, g) for k in reps for g in G.elements}
    assert covered == set(H.elements)


def test_point_stabilizer_and_extend():
    H = SubgroupSpec.young([2, 2])
    assert H.point_stabilizer().order == 2
    assert SubgroupSpec.symmetric(3).extend().order == 6
    cyc = SubgroupSpec.generated_by(3, [from_cycles(3, [(1, 2, 3)])])
    assert cyc.point_stabilizer().order == 1


def test_shift_matrix_over_f2():
    g = from_cycles(3, [(1, 2, 3)])
    M = permutation_module(3, GF(2))
    assert M.matrix_of(g).to_dense() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def test_module_from_generator_matrices():
    G = SubgroupSpec.symmetric(3)
    # the standard action on K^3 through its generators
    mats = [IntMatrix(3, 3, {(g[i], i): 1 for i in range(3)}) for g in G.generators]
    M = SigmaModule(G, ZZ, 3, generator_matrices=mats)
    P = permutation_module(3, ZZ)
    for g in G.elements:
        assert M.matrix_of(g) == P.matrix_of(g)
    assert M.verify_action([[0, 1], [1, 0, 1], [0, 0]])
    with pytest.raises(ValueError):
        SigmaModule(G, ZZ, 3, generator_matrices=mats[:1])


def test_invariant_dimensions():
    G = SubgroupSpec.symmetric(3)
    assert invariants(permutation_module(3, QQ)) == 1
    assert invariants(sign_module(G, QQ)) == 0
    assert invariants(trivial_module(G, GF(5), 2)) == 2
    with pytest.raises(ValueError):
        invariants(sign_module(G, GF(3)))


def test_transposition_acts_by_minus_one_on_top_class_of_torus():
    M = graded_power_module((1, 1), 2, 2, QQ)
    assert M.dim == 1
    assert M.matrix_of((1, 0)).to_dense() == [[-1]]
    M1 = graded_power_module((1, 1), 2, 1, QQ)
    assert M1.matrix_of((1, 0)).to_dense() == [[0, 1], [1, 0]]


def test_betti_table_validation():
    with pytest.raises(ValueError):
        GradedBettiTable((2, 1))
    with pytest.raises(ValueError):
        GradedBettiTable((1, -1))
    t = GradedBettiTable((1, 0, 2))
    assert t.top == 2 and t.total == 3 and t.classes() == [0, 2, 2]


tables = st.lists(st.integers(0, 2), min_size=0, max_size=3).map(lambda xs: GradedBettiTable((1, *xs)))


def poincare_coefficient(tabs, q):
    poly = [1]
    for t in tabs:
        new = [0] * (len(poly) + len(t.betti) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(t.betti):
                new[i + j] += a * b
        poly = new
    return poly[q] if q < len(poly) else 0


@given(tables, tables, st.integers(0, 3), st.integers(0, 5))
def test_kunneth_dimension(z, y, n, q):
    M = KunnethModule([z] * n, y, q, SubgroupSpec.symmetric(n), QQ)
    assert M.dim == poincare_coefficient([z] * n + [y], q)


@given(tables, st.integers(1, 4), st.integers(0, 4), st.sampled_from([QQ, GF(2), GF(3)]))
def test_kunneth_is_an_action(z, n, q, ring):
    M = KunnethModule([z] * n, GradedBettiTable((1,)), q, SubgroupSpec.symmetric(n), ring)
    for g in M.group.elements:
        for h in M.group.generators:
            assert (M.matrix_of(h) @ M.matrix_of(g)).reduce(ring) == M.matrix_of(compose(h, g))


def exterior_trace(g, q):
    # trace of Λ^q of the permutation matrix, as a sum of principal minors
    n = len(g)
    P = sympy.zeros(n, n)
    for i in range(n):
        P[g[i], i] = 1
    return sum(P.extract(list(S), list(S)).det() for S in itertools.combinations(range(n), q))


@given(st.integers(1, 4), st.data())
def test_torus_homology_is_exterior_power(n, data):
    q = data.draw(st.integers(0, n))
    g = data.draw(st.permutations(range(n)).map(tuple))
    M = graded_power_module((1, 1), n, q, QQ)
    assert M.dim == comb(n, q)
    trace = sum(v for (i, j), v in M.matrix_of(g).entries.items() if i == j)
    assert trace == exterior_trace(g, q)


def test_fiber_module_and_unit_insertion():
    tabs = {1: (1, 1), 2: (1, 1)}
    A = fiber_module((2,), 1, 1, tabs, (1,), 1, QQ)
    B = fiber_module((2,), 1, 2, tabs, (1,), 1, QQ)
    assert A.group.order == 1 and B.group.order == 2
    phi = unit_insertion(A, B)
    assert phi.shape == (B.dim, A.dim)
    for g in A.group.generators:
        assert phi @ A.matrix_of(g) == B.matrix_of(g + (A.group.n,)) @ phi
    with pytest.raises(ValueError):
        fiber_module((3,), 1, 1, tabs, (1,), 0, QQ)


def test_kunneth_rejects_mixed_slots():
    with pytest.raises(ValueError):
        KunnethModule([(1, 1), (1,)], (1,), 0, SubgroupSpec.symmetric(2), QQ)
    assert KunnethModule([(1, 1), (1,)], (1,), 0, SubgroupSpec.trivial(2), QQ).dim == 1


def test_transposition_helper():
    assert transposition(3, 0, 2) == (2, 1, 0)
