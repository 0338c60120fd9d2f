"""E² pages H_p(F_{r+n}(R³)/(Σ_λ × Σ_n); H_q(fibre)) and their stabilisation.

The fibre over a configuration of ``r + n`` points is a product of one
factor per point (of charge ``k_i`` for the first r points, ``c`` for the
rest) times a fixed space Y, and the monodromy is the permutation action on
factors.  Stabilisation adds one charge-``c`` point; on coefficients it
inserts the unit class in the new factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..linalg import Ring
from ..rep import GradedBettiTable, fiber_module, unit_insertion
from .complex import ChainMapError, ConfigSpec, FNComplex, StabilisationMap

D = 3


def _tables(betti_per_charge: Mapping[int, object]) -> dict[int, GradedBettiTable]:
    return {
        int(k): v if isinstance(v, GradedBettiTable) else GradedBettiTable(tuple(v))
        for k, v in betti_per_charge.items()
    }


def _fibre_top(lam: Sequence[int], c: int, n: int, tables, y: GradedBettiTable) -> int:
    return sum(tables[k].top for k in lam) + n * (tables[c].top if n else 0) + y.top


@dataclass(frozen=True)
class E2Page:
    """``dims[(p, q)]`` = dim E²_{p,q}; entries not listed are zero or outside the computed range."""

    lam: tuple[int, ...]
    c: int
    n: int
    field: Ring
    dims: Mapping[tuple[int, int], int]
    p_max: int
    q_max: int

    def get(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def rows(self) -> list[list[int]]:
        return [[self.get(p, q) for p in range(self.p_max + 1)] for q in range(self.q_max + 1)]

    def as_dict(self) -> dict:
        return {
            "lambda": list(self.lam),
            "c": self.c,
            "n": self.n,
            "field": self.field.name,
            "p_max": self.p_max,
            "q_max": self.q_max,
            "entries": [
                {"p": p, "q": q, "dim": self.get(p, q)}
                for q in range(self.q_max + 1)
                for p in range(self.p_max + 1)
            ],
        }


def _spec(lam, c, n, tables, y, q, field) -> ConfigSpec:
    M = fiber_module(lam, c, n, tables, y, q, field)
    return ConfigSpec(len(lam) + n, D, M.group, M, field)


def e2_page(
    lam: Sequence[int],
    c: int,
    n: int,
    betti_per_charge: Mapping[int, object],
    y=(1,),
    q_max: int | None = None,
    field: Ring | None = None,
    p_max: int | None = None,
) -> E2Page:
    """Dimensions of E²_{p,q} for ``q ≤ q_max`` and ``p ≤ p_max`` (defaults: everything)."""
    if field is None or not field.is_field:
        raise ValueError("E² pages are computed over a field")
    lam = tuple(lam)
    tables = _tables(betti_per_charge)
    y = y if isinstance(y, GradedBettiTable) else GradedBettiTable(tuple(y))
    top_q = _fibre_top(lam, c, n, tables, y) if all(k in tables for k in lam + (c,)) else 0
    q_max = top_q if q_max is None else q_max
    N = len(lam) + n
    top_p = max(N - 1, 0) * (D - 1)
    p_max = top_p if p_max is None else min(p_max, top_p)
    dims: dict[tuple[int, int], int] = {}
    for q in range(q_max + 1):
        spec = _spec(lam, c, n, tables, y, q, field)
        if spec.module.dim == 0:
            continue
        H = FNComplex(spec, p_max + 1).homology(p_max)
        for p, b in H.betti.items():
            if b and p <= p_max:
                dims[(p, q)] = b
    return E2Page(lam, c, n, field, dims, p_max, q_max)


@dataclass(frozen=True)
class StabilityCell:
    """One checked entry; ``q`` is None for total-degree comparisons."""

    p: int
    q: int | None
    source_dim: int
    target_dim: int
    rank: int | None
    verdict: str

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "verdict": self.verdict,
        }


E2_RANGE_RULE = "E2 cells with 2p <= n - q, i.e. p <= (n - q)/2 (field coefficients)"


@dataclass(frozen=True)
class StabilityReport:
    """Per-cell verdicts for one stabilisation step ``n → n + 1``.

    ``mode`` is ``"iso-verified"`` when induced-map ranks were computed from
    a checked chain map, and ``"rank-consistent"`` when only dimensions were
    compared.
    """

    kind: str
    lam: tuple[int, ...]
    c: int
    n: int
    field: str
    range_rule: str
    mode: str
    cells: tuple[StabilityCell, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        good = {"iso", "rank-equal"}
        return all(cell.verdict in good for cell in self.cells)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": list(self.lam),
            "c": self.c,
            "n": self.n,
            "field": self.field,
            "range_rule": self.range_rule,
            "mode": self.mode,
            "verdict": self.verdict,
            "cells": [c.as_dict() for c in self.cells],
            "notes": list(self.notes),
        }


def e2_window(n: int, q_max: int) -> list[tuple[int, int]]:
    return [(p, q) for q in range(min(q_max, n) + 1) for p in range((n - q) // 2 + 1)]


def e2_stability_report(
    lam: Sequence[int],
    c: int,
    n: int,
    field: Ring,
    q_max: int | None = None,
    betti_per_charge: Mapping[int, object] | None = None,
    y=(1,),
) -> StabilityReport:
    """Compare E² at n and n + 1 through the stabilisation chain map on each row."""
    if not field.is_field:
        raise ValueError("the E² check runs over a field")
    lam = tuple(lam)
    tables = _tables(betti_per_charge or {c: (1, 1)})
    y = y if isinstance(y, GradedBettiTable) else GradedBettiTable(tuple(y))
    if q_max is None:
        q_max = n
    cells: list[StabilityCell] = []
    notes: list[str] = []
    mode = "iso-verified"
    for q in range(min(q_max, n) + 1):
        p_top = (n - q) // 2
        A = _spec(lam, c, n, tables, y, q, field)
        B = _spec(lam, c, n + 1, tables, y, q, field)
        src = FNComplex(A, p_top + 1)
        dst = FNComplex(B, p_top + 1)
        fmap = StabilisationMap(src, dst, unit_insertion(A.module, B.module))
        row_mode = "iso-verified"
        try:
            fmap.check(range(1, p_top + 2))
        except ChainMapError as exc:
            row_mode = "rank-consistent"
            mode = "rank-consistent"
            notes.append(f"q={q}: {exc}; fell back to comparing dimensions")
        hA = src.homology(p_top).betti
        hB = dst.homology(p_top).betti
        for p in range(p_top + 1):
            a, b = hA.get(p, 0), hB.get(p, 0)
            if row_mode == "iso-verified":
                r = fmap.induced_rank(p)
                verdict = "iso" if r == a == b else "not iso"
            else:
                r = None
                verdict = "rank-equal" if a == b else "rank-differs"
            cells.append(StabilityCell(p, q, a, b, r, verdict))
    return StabilityReport("e2", lam, c, n, field.name, E2_RANGE_RULE, mode, tuple(cells), tuple(notes))
