"""Finite chain complexes and their homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .matrix import IntMatrix, Ring
from .rank import rank
from .snf import invariant_factors


class ChainComplexError(ValueError):
    """Raised for complexes whose boundaries do not compose to zero."""


@dataclass(frozen=True)
class ChainComplex:
    """``ranks[k]`` is the rank of chain group k, ``boundaries[k]`` is ∂_k: C_k → C_{k-1}.

    Degrees are a contiguous range; a missing boundary is the zero map.
    """

    ring: Ring
    ranks: Mapping[int, int]
    boundaries: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.ranks:
            lo, hi = min(self.ranks), max(self.ranks)
            if set(self.ranks) != set(range(lo, hi + 1)):
                raise ValueError("chain degrees must be contiguous")
        for k, d in self.boundaries.items():
            if k not in self.ranks or k - 1 not in self.ranks:
                raise ValueError(f"boundary ∂_{k} leaves the degree range")
            if d.shape != (self.ranks[k - 1], self.ranks[k]):
                raise ValueError(
                    f"∂_{k} has shape {d.shape}, expected {(self.ranks[k - 1], self.ranks[k])}"
                )

    @property
    def degrees(self) -> range:
        if not self.ranks:
            return range(0)
        return range(min(self.ranks), max(self.ranks) + 1)

    def boundary(self, k: int) -> IntMatrix:
        d = self.boundaries.get(k)
        if d is not None:
            return d
        return IntMatrix.zero(self.ranks.get(k - 1, 0), self.ranks.get(k, 0))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in self.ranks.items())

    def check_dd(self) -> None:
        for k in self.degrees:
            if k in self.boundaries and k + 1 in self.boundaries:
                prod = (self.boundaries[k] @ self.boundaries[k + 1]).reduce(self.ring)
                if not prod.is_zero():
                    raise ChainComplexError(f"∂_{k} ∘ ∂_{k + 1} ≠ 0")


@dataclass(frozen=True)
class HomologyResult:
    ring: Ring
    betti: Mapping[int, int]
    torsion: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def group(self, k: int) -> str:
        b = self.betti.get(k, 0)
        parts = []
        base = "Z" if self.ring.kind == "Z" else self.ring.name
        if b == 1:
            parts.append(base)
        elif b > 1:
            parts.append(f"{base}^{b}")
        parts += [f"Z/{t}" for t in self.torsion.get(k, ())]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {
            "ring": self.ring.name,
            "degrees": [
                {"degree": k, "betti": self.betti[k], "torsion": list(self.torsion.get(k, ()))}
                for k in sorted(self.betti)
            ],
        }

    def __str__(self) -> str:
        return ", ".join(f"H_{k} = {self.group(k)}" for k in sorted(self.betti))


def _boundary_rank(C: ChainComplex, k: int, cache: dict) -> int:
    if k not in cache:
        d = C.boundary(k)
        cache[k] = rank(d, C.ring) if d.nnz else 0
    return cache[k]


def betti_number(C: ChainComplex, k: int, _cache: dict | None = None) -> int:
    cache = {} if _cache is None else _cache
    return C.ranks[k] - _boundary_rank(C, k, cache) - _boundary_rank(C, k + 1, cache)


def homology(C: ChainComplex, degrees=None, check: bool = True) -> HomologyResult:
    """Homology of ``C``; over Z torsion comes from the Smith form of ∂_{k+1}."""
    if check:
        C.check_dd()
    ks = list(C.degrees) if degrees is None else list(degrees)
    betti: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    cache: dict[int, int] = {}
    if C.ring.kind == "Z":
        factors: dict[int, list[int]] = {}

        def facs(k: int) -> list[int]:
            if k not in factors:
                d = C.boundary(k)
                factors[k] = invariant_factors(d) if d.nnz else []
            return factors[k]

        for k in ks:
            rk_in = len(facs(k + 1))
            rk_out = len(facs(k))
            betti[k] = C.ranks[k] - rk_out - rk_in
            torsion[k] = tuple(f for f in facs(k + 1) if f > 1)
    else:
        for k in ks:
            betti[k] = betti_number(C, k, cache)
    return HomologyResult(C.ring, betti, torsion)
