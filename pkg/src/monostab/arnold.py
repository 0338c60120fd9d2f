"""The cohomology ring of F_r(R³) in the α_ij presentation, and Euler classes
of the Gibbons-Manton circle factors.

Indices are 1-based as in the usual notation; ``α_ji = -α_ij``.  The ring is
commutative (generators have degree 2) with relations ``α_ij² = 0`` and
``α_ij α_jk + α_jk α_ki + α_ki α_ij = 0``.  A monomial is in normal form
when it is a product ``α_{i_1 j_1} ⋯ α_{i_k j_k}`` with ``i_t < j_t`` and
``j_1 < ⋯ < j_k``; such monomials form a basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .rep import Perm, inverse

Pair = tuple[int, int]
Monomial = tuple[Pair, ...]


class ArnoldIndexError(ValueError):
    pass


def _check_pair(i: int, j: int, r: int) -> None:
    if i == j:
        raise ArnoldIndexError(f"α_{i}{j} has equal indices")
    if not (1 <= i <= r and 1 <= j <= r):
        raise ArnoldIndexError(f"α_{i}{j} is out of range for {r} points")


@lru_cache(maxsize=None)
def _normalize_monomial(pairs: tuple[Pair, ...]) -> tuple[tuple[Monomial, int], ...]:
    """Normal form of a product of generators with ``i < j`` in every pair."""
    if len(set(pairs)) < len(pairs):
        return ()
    by_j: dict[int, list[Pair]] = {}
    for pr in pairs:
        by_j.setdefault(pr[1], []).append(pr)
    for j, prs in by_j.items():
        if len(prs) > 1:
            (a, _), (b, _) = sorted(prs)[:2]
            rest = list(pairs)
            rest.remove((a, j))
            rest.remove((b, j))
            # α_aj α_bj = α_ab α_bj - α_ab α_aj   (a < b < j)
            acc: dict[Monomial, int] = {}
            for extra, sgn in (((a, b), (b, j)), 1), (((a, b), (a, j)), -1):
                for mono, c in _normalize_monomial(tuple(sorted(rest + list(extra)))):
                    acc[mono] = acc.get(mono, 0) + sgn * c
            return tuple(sorted((m, c) for m, c in acc.items() if c))
    return ((tuple(sorted(pairs, key=lambda p: p[1])), 1),)


def _orient(i: int, j: int) -> tuple[Pair, int]:
    return ((i, j), 1) if i < j else ((j, i), -1)


def normal_terms(words: Iterable[tuple[int, Sequence[Pair]]], r: int) -> dict[Monomial, int]:
    """Straighten a linear combination of words ``(coeff, [(i, j), ...])``."""
    acc: dict[Monomial, int] = {}
    for coeff, word in words:
        if not coeff:
            continue
        s = coeff
        pairs = []
        for i, j in word:
            _check_pair(i, j, r)
            pr, sg = _orient(i, j)
            pairs.append(pr)
            s *= sg
        for mono, c in _normalize_monomial(tuple(sorted(pairs))):
            acc[mono] = acc.get(mono, 0) + s * c
    return {m: c for m, c in acc.items() if c}


@dataclass(frozen=True)
class ArnoldClass:
    """A homogeneous element of H^{2k}(F_r(R³); Z) in normal form."""

    r: int
    k: int
    terms: tuple[tuple[Monomial, int], ...]

    def __post_init__(self) -> None:
        for mono, c in self.terms:
            if len(mono) != self.k or not c:
                raise ValueError("terms must be nonzero monomials of degree k")

    @classmethod
    def from_terms(cls, r: int, k: int, terms: Mapping[Monomial, int]) -> "ArnoldClass":
        return cls(r, k, tuple(sorted((m, c) for m, c in terms.items() if c)))

    @classmethod
    def zero(cls, r: int, k: int = 1) -> "ArnoldClass":
        return cls(r, k, ())

    @classmethod
    def one(cls, r: int) -> "ArnoldClass":
        return cls(r, 0, (((), 1),))

    @classmethod
    def generator(cls, i: int, j: int, r: int) -> "ArnoldClass":
        return arnold_normalize([(1, [(i, j)])], r)

    @property
    def degree(self) -> int:
        """Cohomological degree 2k."""
        return 2 * self.k

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> int:
        return dict(self.terms).get(mono, 0)

    def _combine(self, other: "ArnoldClass", sgn: int) -> "ArnoldClass":
        if self.r != other.r or (self.k != other.k and self.terms and other.terms):
            raise ValueError("classes live in different groups")
        k = self.k if self.terms else other.k
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + sgn * c
        return ArnoldClass.from_terms(self.r, k, acc)

    def __add__(self, other: "ArnoldClass") -> "ArnoldClass":
        return self._combine(other, 1)

    def __sub__(self, other: "ArnoldClass") -> "ArnoldClass":
        return self._combine(other, -1)

    def __neg__(self) -> "ArnoldClass":
        return ArnoldClass(self.r, self.k, tuple((m, -c) for m, c in self.terms))

    def scale(self, a: int) -> "ArnoldClass":
        return ArnoldClass.from_terms(self.r, self.k, {m: a * c for m, c in self.terms})

    def __mul__(self, other: "ArnoldClass") -> "ArnoldClass":
        if self.r != other.r:
            raise ValueError("classes on different numbers of points")
        words = [(c1 * c2, list(m1) + list(m2)) for m1, c1 in self.terms for m2, c2 in other.terms]
        return ArnoldClass.from_terms(self.r, self.k + other.k, normal_terms(words, self.r))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            name = "·".join(f"α_{i}{j}" if max(i, j) < 10 else f"α_{{{i},{j}}}" for i, j in mono) or "1"
            if c == 1:
                coef = ""
            elif c == -1:
                coef = "-"
            else:
                coef = str(c)
            parts.append(f"{coef}{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "degree": self.degree,
            "terms": [{"monomial": [list(p) for p in m], "coefficient": c} for m, c in self.terms],
            "text": str(self),
        }


def arnold_normalize(expr: Iterable[tuple[int, Sequence[Pair]]], r: int) -> ArnoldClass:
    """Normal form of a homogeneous combination of words in the α's."""
    expr = list(expr)
    degrees = {len(w) for c, w in expr if c}
    if len(degrees) > 1:
        raise ValueError("expression is not homogeneous")
    k = degrees.pop() if degrees else 1
    return ArnoldClass.from_terms(r, k, normal_terms(expr, r))


def normal_basis(r: int, k: int) -> list[Monomial]:
    """Normal monomials of degree 2k on r points, in sorted order."""
    out = []
    for js in itertools.combinations(range(2, r + 1), k):
        for iis in itertools.product(*(range(1, j) for j in js)):
            out.append(tuple(zip(iis, js)))
    return sorted(out)


def arnold_basis_count(r: int, k: int) -> int:
    return len(normal_basis(r, k))


@dataclass(frozen=True)
class EulerClass:
    """Euler class of the circle factor S_{λ,j}: Σ_{i≠j} k_i α_ij."""

    lam: tuple[int, ...]
    j: int
    cls: ArnoldClass

    def __str__(self) -> str:
        return str(self.cls)


def gm_euler_class(lam: Sequence[int], j: int) -> EulerClass:
    lam = tuple(int(k) for k in lam)
    r = len(lam)
    if not 1 <= j <= r:
        raise ValueError(f"j = {j} out of range 1..{r}")
    if any(k < 0 for k in lam):
        raise ValueError("weights must be nonnegative")
    words = [(lam[i - 1], [(i, j)]) for i in range(1, r + 1) if i != j]
    return EulerClass(lam, j, ArnoldClass.from_terms(r, 1, normal_terms(words, r)))


def stab_pullback(cls: ArnoldClass, r: int | None = None) -> ArnoldClass:
    """Pull back along the map adding point r: α_ij ↦ α_ij for i, j < r and α_ir ↦ 0."""
    r = cls.r if r is None else r
    if r != cls.r:
        raise ValueError("class does not live on r points")
    if r == 0:
        raise ValueError("no point to remove")
    # in a normal monomial the index r can only occur as the larger index
    return ArnoldClass.from_terms(r - 1, cls.k, {m: c for m, c in cls.terms if all(j != r for _, j in m)})


def forget_pullback(cls: ArnoldClass, n: int) -> ArnoldClass:
    """Pull back along the map F_n → F_r forgetting the last n - r points."""
    if n < cls.r:
        raise ValueError("can only add points")
    return ArnoldClass(n, cls.k, cls.terms)


def perm_action(sigma: Perm, cls: ArnoldClass) -> ArnoldClass:
    """σ* on H^*: α_ij ↦ α_{σ⁻¹(i), σ⁻¹(j)} (σ given by 0-based images)."""
    if len(sigma) != cls.r:
        raise ValueError("permutation size does not match")
    inv = inverse(tuple(sigma))
    words = [(c, [(inv[i - 1] + 1, inv[j - 1] + 1) for i, j in m]) for m, c in cls.terms]
    return ArnoldClass.from_terms(cls.r, cls.k, normal_terms(words, cls.r))


def permute_weights(sigma: Perm, lam: Sequence[int]) -> tuple[int, ...]:
    """(σλ)_i = λ_{σ⁻¹(i)}."""
    inv = inverse(tuple(sigma))
    return tuple(lam[inv[i]] for i in range(len(lam)))


@dataclass(frozen=True)
class PullbackVerdict:
    j: int
    holds: bool
    pulled_back: ArnoldClass
    expected: ArnoldClass

    def as_dict(self) -> dict:
        return {"j": self.j, "holds": self.holds, "pulled_back": str(self.pulled_back), "expected": str(self.expected)}


def verify_pullback_lemma(lam: Sequence[int]) -> list[PullbackVerdict]:
    """Pulling S_{λ,j} back along the stabilisation map gives S_{λ',j} (j < r) or a trivial bundle (j = r)."""
    lam = tuple(lam)
    if not lam or any(k <= 0 for k in lam):
        raise ValueError("need a nonempty tuple of positive weights")
    r = len(lam)
    out = []
    for j in range(1, r + 1):
        got = stab_pullback(gm_euler_class(lam, j).cls)
        if j < r:
            want = gm_euler_class(lam[:-1], j).cls
        else:
            want = ArnoldClass.zero(r - 1)
        out.append(PullbackVerdict(j, got.terms == want.terms, got, want))
    return out


@dataclass(frozen=True)
class ForgetfulWitness:
    """``difference = e_{λ,j} - τ*(e_{λ|r, j})``, nonzero when S_{λ,j} is not pulled back from F_r."""

    j: int
    r: int
    difference: ArnoldClass

    def as_dict(self) -> dict:
        return {"j": self.j, "r": self.r, "witness": self.difference.as_dict()}


def forgetful_differences(lam: Sequence[int], r: int) -> list[ForgetfulWitness]:
    lam = tuple(lam)
    n = len(lam)
    if not 1 <= r < n:
        raise ValueError("need 1 ≤ r < len(λ)")
    out = []
    for j in range(1, r + 1):
        full = gm_euler_class(lam, j).cls
        pulled = forget_pullback(gm_euler_class(lam[:r], j).cls, n)
        out.append(ForgetfulWitness(j, r, full - pulled))
    return out


def verify_forgetful_obstruction(lam: Sequence[int], r: int) -> ForgetfulWitness | None:
    """First j ≤ r whose circle factor is not a pullback along the forgetful map, or None."""
    for wit in forgetful_differences(lam, r):
        if not wit.difference.is_zero():
            return wit
    return None
