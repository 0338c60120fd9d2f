"""Rational model of the Gibbons-Manton torus bundle over F_r(R³).

The model is ``A ⊗ Λ(t_1, ..., t_r)`` with A the Arnold ring over Q, the
t_j in degree 1 and ``d t_j = e_j`` the Euler class of the j-th circle
factor.  This is the standard model of a principal torus bundle over a
formal simply connected base.  Invariants under a group permuting equal
weights give the quotient by Σ_λ (characteristic zero only).
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .arnold import Monomial, gm_euler_class, normal_basis, normal_terms, permute_weights
from .fn.e2 import StabilityCell, StabilityReport
from .linalg import QQ, IntMatrix, Ring, rank
from .rep import GradedBettiTable, Perm, SubgroupSpec, fiber_colors, inverse


def _exterior_sort(seq: list[int]) -> tuple[tuple[int, ...], int]:
    """Sort a product of odd generators, returning (sorted, sign); 0 if repeated."""
    if len(set(seq)) < len(seq):
        return (), 0
    s = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                s = -s
    return tuple(sorted(seq)), s


class KoszulModel:
    """The cochain algebra ``A ⊗ Λ(t)`` with ``d t_j = e_{λ,j}``.

    Basis elements of degree m are pairs ``(monomial, S)`` with
    ``2·len(monomial) + len(S) = m``, S a sorted tuple of 1-based indices.
    """

    def __init__(self, lam: Sequence[int], group: SubgroupSpec | None = None) -> None:
        self.lam = tuple(int(k) for k in lam)
        self.r = len(self.lam)
        if group is not None:
            if group.n != self.r:
                raise ValueError("group must act on the r points")
            for g in group.generators:
                if permute_weights(g, self.lam) != self.lam:
                    raise ValueError("group does not preserve the weights")
        self.group = group
        self.euler = [gm_euler_class(self.lam, j).cls for j in range(1, self.r + 1)]
        self._mats: dict[int, IntMatrix] = {}
        self._reyn: dict[int, IntMatrix] = {}
        self._index_cache: dict[int, dict] = {}

    @property
    def top_degree(self) -> int:
        return 2 * max(self.r - 1, 0) + self.r

    def basis(self, m: int) -> list[tuple[Monomial, tuple[int, ...]]]:
        out = []
        for k in range(0, m // 2 + 1):
            s = m - 2 * k
            if k > max(self.r - 1, 0) or s > self.r:
                continue
            for mono in normal_basis(self.r, k):
                for S in itertools.combinations(range(1, self.r + 1), s):
                    out.append((mono, S))
        return out

    def index(self, m: int) -> dict:
        if m not in self._index_cache:
            self._index_cache[m] = {b: i for i, b in enumerate(self.basis(m))}
        return self._index_cache[m]

    def dim(self, m: int) -> int:
        return len(self.index(m)) if 0 <= m <= self.top_degree else 0

    def differential(self, m: int) -> IntMatrix:
        """Matrix of d: C^m → C^{m+1}."""
        if m in self._mats:
            return self._mats[m]
        src = self.index(m) if 0 <= m <= self.top_degree else {}
        dst = self.index(m + 1) if 0 <= m + 1 <= self.top_degree else {}
        entries: dict[tuple[int, int], int] = {}
        for (mono, S), col in src.items():
            for l, j in enumerate(S):
                sgn = -1 if l % 2 else 1
                rest = S[:l] + S[l + 1:]
                words = [(c, list(mono) + list(em)) for em, c in self.euler[j - 1].terms]
                for mono2, c in normal_terms(words, self.r).items():
                    key = (dst[(mono2, rest)], col)
                    entries[key] = entries.get(key, 0) + sgn * c
        out = IntMatrix(len(dst), len(src), {k: v for k, v in entries.items() if v})
        self._mats[m] = out
        return out

    def act(self, g: Perm, m: int) -> IntMatrix:
        """σ* on C^m: α_ij ↦ α_{σ⁻¹i, σ⁻¹j}, t_j ↦ t_{σ⁻¹j}."""
        inv = inverse(g)
        idx = self.index(m)
        entries: dict[tuple[int, int], int] = {}
        for (mono, S), col in idx.items():
            S2, s = _exterior_sort([inv[j - 1] + 1 for j in S])
            words = [(s, [(inv[i - 1] + 1, inv[j - 1] + 1) for i, j in mono])]
            for mono2, c in normal_terms(words, self.r).items():
                key = (idx[(mono2, S2)], col)
                entries[key] = entries.get(key, 0) + c
        return IntMatrix(len(idx), len(idx), {k: v for k, v in entries.items() if v})

    def reynolds(self, m: int) -> IntMatrix:
        """Σ_g g* on C^m (|G| times the averaging projector)."""
        if m in self._reyn:
            return self._reyn[m]
        if self.group is None:
            raise ValueError("no group given")
        acc: dict = {}
        for g in self.group.elements:
            for k, v in self.act(g, m).entries.items():
                acc[k] = acc.get(k, 0) + v
        n = self.dim(m)
        out = IntMatrix(n, n, {k: v for k, v in acc.items() if v})
        self._reyn[m] = out
        return out

    def check_d_squared(self) -> bool:
        for m in range(self.top_degree):
            if not (self.differential(m + 1) @ self.differential(m)).is_zero():
                return False
        return True

    def betti(self, max_degree: int | None = None) -> tuple[int, ...]:
        top = self.top_degree if max_degree is None else min(max_degree, self.top_degree)
        ranks = {m: rank(self.differential(m), QQ) for m in range(-1, top + 1)}
        return tuple(self.dim(m) - ranks[m] - ranks[m - 1] for m in range(top + 1))

    def invariant_betti(self, max_degree: int | None = None) -> tuple[int, ...]:
        """Betti numbers of the invariant subcomplex, i.e. of the invariant cohomology."""
        top = self.top_degree if max_degree is None else min(max_degree, self.top_degree)
        inv_dim = {}
        drank = {-1: 0}
        for m in range(0, top + 1):
            P = self.reynolds(m)
            inv_dim[m] = rank(P, QQ)
            drank[m] = rank(self.differential(m) @ P, QQ)
        return tuple(inv_dim[m] - drank[m] - drank[m - 1] for m in range(top + 1))


def koszul_cohomology(
    lam: Sequence[int],
    field: Ring = QQ,
    with_invariants: SubgroupSpec | bool | None = None,
    max_degree: int | None = None,
) -> GradedBettiTable:
    """Betti numbers of the torus bundle weighted by λ (or of its quotient)."""
    if field.characteristic != 0:
        raise ValueError("the Koszul model is used in characteristic zero only")
    lam = tuple(lam)
    if any(k <= 0 for k in lam):
        raise ValueError("weights must be positive")
    if with_invariants is True:
        group = SubgroupSpec.stabilizer(lam)
    elif with_invariants:
        group = with_invariants
    else:
        group = None
    model = KoszulModel(lam, group)
    b = model.invariant_betti(max_degree) if group is not None else model.betti(max_degree)
    return GradedBettiTable(b)


TOTAL_RANGE_RULE = "total degrees m with 2m <= n, i.e. m <= n/2 (rational coefficients); rank comparison only"


def total_stability_report(lam: Sequence[int], c: int, n_range: Sequence[int]) -> list[StabilityReport]:
    """Compare rational Betti numbers of the quotient bundles at n and n + 1, for each n.

    The model does not realise the stabilisation map, so each report is
    rank-level ("rank-consistent"), never an isomorphism certificate.
    """
    lam = tuple(lam)
    reports = []
    cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def betti(n: int, top: int) -> tuple[int, ...]:
        key = (n, top)
        if key not in cache:
            weights = lam + (c,) * n
            group = SubgroupSpec.stabilizer(fiber_colors(lam, n))
            cache[key] = KoszulModel(weights, group).invariant_betti(top)
        return cache[key]

    for n in sorted(set(n_range)):
        top = n // 2
        a, b = betti(n, top), betti(n + 1, top)
        cells = []
        for m in range(top + 1):
            x = a[m] if m < len(a) else 0
            y = b[m] if m < len(b) else 0
            cells.append(StabilityCell(m, None, x, y, None, "rank-equal" if x == y else "rank-differs"))
        reports.append(
            StabilityReport("total", lam, c, n, "Q", TOTAL_RANGE_RULE, "rank-consistent", tuple(cells))
        )
    return reports
