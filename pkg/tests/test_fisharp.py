from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monostab.fisharp import FISharpModule, degree_bound, delta, delta_power, make_TZYq
from monostab.linalg import GF, QQ, ZZ
from monostab.rep import GradedBettiTable

FIELDS = [QQ, GF(2), GF(3)]


def circle_power_dims(n: int, q: int, y_top: int = 0) -> int:
    # H_q((S^1)^n × Y) with Y = point or S^1
    return comb(n, q) + (comb(n, q - 1) if y_top and q >= 1 else 0)


@pytest.mark.parametrize("field", FIELDS)
@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_dimensions_are_binomial(field, q):
    T = make_TZYq((1, 1), (1,), q, field, 7)
    assert T.dims == tuple(comb(n, q) for n in range(8))
    T = make_TZYq((1, 1), (1, 1), q, field, 6)
    assert T.dims == tuple(circle_power_dims(n, q, 1) for n in range(7))


@pytest.mark.parametrize("field", FIELDS)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_delta_tower_is_binomial(field, q):
    # ι is injective, so dim Δ^k T(n) = C(n, q - k)
    T = make_TZYq((1, 1), (1,), q, field, 8)
    for k in range(q + 2):
        D = delta_power(T, k)
        assert D.dims == tuple(comb(n, q - k) if q >= k else 0 for n in range(9 - k))


def test_even_classes_only():
    T = make_TZYq((1, 0, 1), (1,), 2, QQ, 6)
    assert T.dims == tuple(n for n in range(7))
    assert make_TZYq((1, 0, 1), (1,), 1, QQ, 6).is_zero()


@pytest.mark.parametrize("field", FIELDS)
def test_structure_relations(field):
    for z in [(1, 1), (1, 0, 1), (1, 2)]:
        for q in range(4):
            T = make_TZYq(z, (1, 1), q, field, 5)
            assert T.relation_failures() == []
            assert delta(T).relation_failures() == []


@given(
    st.lists(st.integers(0, 2), max_size=2).map(lambda xs: (1, *xs)),
    st.lists(st.integers(0, 1), max_size=1).map(lambda xs: (1, *xs)),
    st.integers(0, 3),
    st.sampled_from(FIELDS),
)
def test_degree_at_most_q(z, y, q, field):
    T = make_TZYq(z, y, q, field, 6)
    assert T.relation_failures() == []
    cert = degree_bound(T, q)
    assert cert.status == "verified"
    assert all(v == 0 for v in cert.values)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_degree_exactly_q(q):
    T = make_TZYq((1, 1), (1,), q, QQ, 8)
    cert = degree_bound(T, q - 1)
    assert cert.status == "refuted"
    assert cert.witness_n == 0 and cert.witness_dim == 1


def test_constant_and_zero_modules():
    K = FISharpModule.constant(QQ, 6)
    assert K.relation_failures() == []
    assert delta(K).is_zero()
    assert degree_bound(K, 0).status == "verified"
    assert degree_bound(K, -1).status == "refuted"
    assert degree_bound(FISharpModule.zero(QQ, 4), -1).status == "verified"


def test_inconclusive_when_truncation_too_short():
    T = make_TZYq((1, 1), (1,), 3, QQ, 2)
    assert degree_bound(T, 3).status == "inconclusive"


def test_permutation_word_matches_module_action():
    T = make_TZYq((1, 1), (1,), 2, GF(3), 4)
    mods_swap = T.permutation(4, (1, 0, 2, 3))
    assert mods_swap == T.swaps[4][0]
    g, h = (2, 0, 3, 1), (1, 3, 0, 2)
    gh = tuple(g[i] for i in h)
    assert T.permutation(4, gh) == T.permutation(4, g).matmul(T.permutation(4, h), GF(3))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        make_TZYq((2, 1), (1,), 1, QQ, 3)
    with pytest.raises(ValueError):
        make_TZYq((1, 1), (1,), 1, ZZ, 3)
    with pytest.raises(ValueError):
        GradedBettiTable(())
