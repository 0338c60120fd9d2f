from __future__ import annotations

import pytest

from monostab.fn import e2_page, e2_stability_report
from monostab.fn.e2 import e2_window
from monostab.linalg import GF, QQ, ZZ
from monostab.koszul import koszul_cohomology

CIRCLE = {1: (1, 1), 2: (1, 1), 3: (1, 1)}


def test_page_base_contractible():
    page = e2_page((), 1, 1, CIRCLE, field=QQ)
    assert page.rows() == [[1], [1]]


def test_page_rp2_row_over_f2():
    page = e2_page((), 1, 2, CIRCLE, q_max=0, field=GF(2))
    assert page.rows() == [[1, 1, 1]]


def test_page_single_monopole():
    page = e2_page((2,), 1, 0, CIRCLE, field=QQ)
    assert page.rows() == [[1], [1]]


def test_page_requires_field():
    with pytest.raises(ValueError):
        e2_page((), 1, 2, CIRCLE, field=ZZ)
    with pytest.raises(ValueError):
        e2_page((), 1, 2, CIRCLE)


def test_page_euler_characteristic():
    # χ(E²) = χ(total space) = χ(base) · χ(fibre) = 0 for circle fibres
    for n in range(1, 4):
        page = e2_page((), 1, n, CIRCLE, field=QQ)
        chi = sum((-1) ** (p + q) * page.get(p, q) for p in range(page.p_max + 1) for q in range(page.q_max + 1))
        assert chi == 0


def test_degree_one_matches_koszul():
    # total H_1 from E²_{0,1} + E²_{1,0} agrees with the rational model for n = 3 points of charge 1
    page = e2_page((), 1, 3, CIRCLE, q_max=1, field=QQ, p_max=1)
    assert page.get(0, 1) + page.get(1, 0) == 1
    assert koszul_cohomology((1, 1, 1), with_invariants=True, max_degree=1).betti[1] == 1


def test_window_shape():
    assert e2_window(2, 2) == [(0, 0), (1, 0), (0, 1), (0, 2)]
    assert e2_window(0, 3) == [(0, 0)]


@pytest.mark.parametrize("field", [QQ, GF(2)])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_circle_bundle_stability(field, n):
    rep = e2_stability_report((), 1, n, field)
    assert rep.verdict == "PASS"
    assert rep.mode == "iso-verified"
    assert {(c.p, c.q) for c in rep.cells} == set(e2_window(n, n))
    assert all(c.rank == c.source_dim == c.target_dim for c in rep.cells)


def test_monopole_stability_small():
    for n in (2, 3):
        rep = e2_stability_report((2,), 1, n, QQ, betti_per_charge=CIRCLE)
        assert rep.verdict == "PASS" and rep.mode == "iso-verified"


def test_outside_the_window_is_not_iso():
    # C_1 → C_2 over F2: H_1 goes 0 → F2, so p = 1, q = 0 fails at n = 1
    rep = e2_stability_report((), 1, 1, GF(2))
    assert (1, 0) not in {(c.p, c.q) for c in rep.cells}
    from monostab.fn import ConfigSpec, FNComplex, StabilisationMap
    from monostab.rep import fiber_module, unit_insertion

    MA = fiber_module((), 1, 1, CIRCLE, (1,), 0, GF(2))
    MB = fiber_module((), 1, 2, CIRCLE, (1,), 0, GF(2))
    A = FNComplex(ConfigSpec(1, 3, MA.group, MA, GF(2)))
    B = FNComplex(ConfigSpec(2, 3, MB.group, MB, GF(2)))
    f = StabilisationMap(A, B, unit_insertion(MA, MB))
    assert f.induced_rank(1) == 0
    assert B.homology().betti[1] == 1


def test_report_serialises():
    rep = e2_stability_report((), 1, 2, QQ)
    d = rep.as_dict()
    assert d["verdict"] == "PASS"
    assert d["range_rule"].startswith("E2 cells with 2p <= n - q")
    assert len(d["cells"]) == len(rep.cells)
