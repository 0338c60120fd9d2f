from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from monostab.linalg import (
    BACKEND,
    GF,
    QQ,
    ZZ,
    ChainComplex,
    ChainComplexError,
    IntMatrix,
    Ring,
    block,
    determinant,
    homology,
    hstack,
    invariant_factors,
    is_smith_form,
    rank,
    smith_normal_form,
    vstack,
)


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3, density: float = 0.5):
    return IntMatrix.from_dense(
        [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)],
        cols,
    )


def sympy_rank_mod(A: IntMatrix, p: int) -> int:
    # row reduction over GF(p) done by hand on a dense copy
    rows = [[x % p for x in r] for r in A.to_dense()]
    r = 0
    for c in range(A.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


matrices = st.integers(0, 6).flatmap(
    lambda m: st.integers(0, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m).map(
            lambda rows, n=n: IntMatrix.from_dense(rows, n)
        )
    )
)


def test_ring_parse_and_names():
    assert Ring.parse("Z") == ZZ
    assert Ring.parse("q") == QQ
    assert Ring.parse("f2") == GF(2)
    assert Ring.parse("fp:7") == GF(7)
    assert GF(3).name == "F3"
    with pytest.raises(ValueError):
        Ring.parse("f4")
    with pytest.raises(ValueError):
        Ring.parse("reals")


def test_matrix_basics():
    A = IntMatrix.from_dense([[1, 2], [0, 3]])
    B = IntMatrix.identity(2)
    assert A @ B == A
    assert A.transpose().to_dense() == [[1, 0], [2, 3]]
    assert (A - A).is_zero()
    assert A.reduce(GF(3)).to_dense() == [[1, 2], [0, 0]]
    assert hstack([A, B]).shape == (2, 4)
    assert vstack([A, B]).shape == (4, 2)
    big = block([[A, None], [None, B]], [2, 2], [2, 2])
    assert big.to_dense() == [[1, 2, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(ValueError):
        A @ IntMatrix.zero(3, 1)


@pytest.mark.parametrize("backend", ["python", BACKEND])
def test_rank_against_sympy(backend):
    rng = random.Random(7)
    for _ in range(150):
        A = random_matrix(rng, rng.randint(0, 9), rng.randint(0, 9))
        expect = sympy.Matrix(A.rows, A.cols, [x for r in A.to_dense() for x in r]).rank() if A.rows and A.cols else 0
        assert rank(A, QQ, backend) == expect
        assert rank(A, ZZ, backend) == expect
        for p in (2, 3, 5):
            assert rank(A, GF(p), backend) == sympy_rank_mod(A, p)


def test_rank_large_entries_fall_back():
    A = IntMatrix.from_dense([[10**30, 1], [1, 3]])
    assert rank(A, QQ) == 2
    B = IntMatrix.from_dense([[10**30, 2 * 10**30], [1, 2]])
    assert rank(B, QQ) == 1


@given(matrices)
def test_snf_identity(A):
    D, U, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert is_smith_form(D)
    if U.rows:
        assert abs(determinant(U)) == 1
    if V.rows:
        assert abs(determinant(V)) == 1


def test_invariant_factors_against_sympy():
    rng = random.Random(11)
    for _ in range(120):
        A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), -5, 5, 0.7)
        S = sympy_snf(sympy.Matrix(A.to_dense()))
        expect = sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)
        assert sorted(invariant_factors(A)) == expect


@given(matrices)
def test_invariant_factors_match_dense_snf(A):
    D, _, _ = smith_normal_form(A)
    diag = [abs(D.entries.get((i, i), 0)) for i in range(min(D.shape))]
    assert sorted(invariant_factors(A)) == sorted(x for x in diag if x)


def test_determinant_against_sympy():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 6)
        A = random_matrix(rng, n, n, -4, 4, 0.8)
        assert determinant(A) == sympy.Matrix(A.to_dense()).det()


def circle_complex() -> ChainComplex:
    # one vertex, one edge
    return ChainComplex(ZZ, {0: 1, 1: 1}, {1: IntMatrix.zero(1, 1)})


def rp2_complex(ring: Ring) -> ChainComplex:
    # one cell in each dimension, ∂2 = 2, ∂1 = 0
    return ChainComplex(
        ring,
        {0: 1, 1: 1, 2: 1},
        {1: IntMatrix.zero(1, 1), 2: IntMatrix.from_dense([[2]]).reduce(ring)},
    )


def test_homology_small_oracles():
    H = homology(circle_complex())
    assert H.betti == {0: 1, 1: 1}
    H = homology(rp2_complex(ZZ))
    assert [H.group(k) for k in range(3)] == ["Z", "Z/2", "0"]
    H = homology(rp2_complex(GF(2)))
    assert H.betti == {0: 1, 1: 1, 2: 1}
    H = homology(rp2_complex(QQ))
    assert H.betti == {0: 1, 1: 0, 2: 0}


def test_chain_complex_validation():
    with pytest.raises(ValueError):
        ChainComplex(ZZ, {0: 1, 1: 2}, {1: IntMatrix.zero(2, 1)})
    bad = ChainComplex(ZZ, {0: 1, 1: 1, 2: 1}, {1: IntMatrix.from_dense([[1]]), 2: IntMatrix.from_dense([[1]])})
    with pytest.raises(ChainComplexError):
        bad.check_dd()
    assert circle_complex().euler_characteristic() == 0


@given(matrices)
def test_backends_agree(A):
    for ring in (QQ, GF(2), GF(3)):
        assert rank(A, ring, "python") == rank(A, ring, BACKEND)
