"""Chain complexes for H_*(F_n(R^d)/G; M) and the stabilisation chain map.

The cells of F_n(R^d) are permuted freely by Σ_n, so G-equivariant
compactly supported cochains with values in ``L = M ⊗ or`` are determined
by their values on one labelling per G-orbit.  Poincaré duality for the
orientable-up-to-``or`` manifold F_n(R^d)/G, with ``or(g) = sign(g)^d``,
turns these into homology with coefficients in M: a cell with depth sum
``p`` contributes to homological degree ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..linalg import ChainComplex, HomologyResult, IntMatrix, Ring, homology, rank
from ..linalg.matrix import block
from ..rep import Perm, SigmaModule, SubgroupSpec, compose, inverse, sign, trivial_module
from .cells import cells_by_degree, faces


class ChainMapError(RuntimeError):
    """The stabilisation map failed to commute with the differentials."""


@dataclass(frozen=True)
class ConfigSpec:
    """n points in R^d modulo G ≤ Σ_n, with coefficients in a G-module."""

    n: int
    d: int
    group: SubgroupSpec
    module: SigmaModule
    ring: Ring

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if self.group.n != self.n:
            raise ValueError("group must act on the n labels")
        if self.module.group != self.group:
            raise ValueError("module is over a different group")
        if self.module.ring != self.ring:
            raise ValueError("module is over a different ring")

    @classmethod
    def trivial_coefficients(cls, n: int, d: int, group: SubgroupSpec, ring: Ring) -> "ConfigSpec":
        return cls(n, d, group, trivial_module(group, ring), ring)


class FNComplex:
    """Lazily assembled complex; ``boundary(p)`` maps degree p to degree p-1."""

    def __init__(self, spec: ConfigSpec, max_degree: int | None = None) -> None:
        self.spec = spec
        n, d = spec.n, spec.d
        self.by_degree = cells_by_degree(n, d, max_degree)
        self.full_top = max(n - 1, 0) * (d - 1)
        self.reps = spec.group.orbit_reps()
        self.dim = spec.module.dim
        self._index = {
            p: {w: k for k, w in enumerate(ws)} for p, ws in self.by_degree.items()
        }
        self._bd: dict[int, IntMatrix] = {}
        self._L: dict[Perm, tuple] = {}
        self._rep_index = {r: k for k, r in enumerate(self.reps)}

    @property
    def degrees(self) -> range:
        return range(0, max(self.by_degree) + 1)

    def cells(self, p: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(r, w) for w in self.by_degree.get(p, []) for r in self.reps]

    def num_cells(self, p: int) -> int:
        return len(self.by_degree.get(p, ())) * len(self.reps)

    def chain_rank(self, p: int) -> int:
        return self.num_cells(p) * self.dim

    def block_index(self, rep, w) -> int:
        return self._index[sum(w)][w] * len(self.reps) + self._rep_index[rep]

    def twisted(self, g: Perm) -> list[tuple[int, int, int]]:
        """Entries ``(row, col, value)`` of L(g) = sign(g)^d · M(g)."""
        out = self._L.get(g)
        if out is None:
            M = self.spec.module
            o = sign(g) if self.spec.d % 2 else 1
            if M.is_signed_permutation:
                targets, signs = M.signed(g)
                out = [(t, i, o * s) for i, (t, s) in enumerate(zip(targets, signs))]
            else:
                out = [(i, j, o * v) for (i, j), v in M.matrix_of(g).entries.items()]
            self._L[g] = out
        return out

    def boundary(self, p: int) -> IntMatrix:
        if p in self._bd:
            return self._bd[p]
        if p <= 0 or p not in self.by_degree or p - 1 not in self.by_degree:
            rows = self.chain_rank(p - 1) if p - 1 in self.by_degree else 0
            cols = self.chain_rank(p) if p in self.by_degree else 0
            m = IntMatrix.zero(rows, cols)
            self._bd[p] = m
            return m
        G = self.spec.group
        dim = self.dim
        entries: dict[tuple[int, int], int] = {}
        nreps = len(self.reps)
        col_index = self._index[p]
        for wi, w in enumerate(self.by_degree[p - 1]):
            fl = faces(w, self.spec.d)
            for ri, rho in enumerate(self.reps):
                row0 = (wi * nreps + ri) * dim
                for w2, pi, eps in fl:
                    tau2 = tuple(rho[k] for k in pi)
                    rep, g = G.orbit_rep(tau2)
                    col0 = (col_index[w2] * nreps + self._rep_index[rep]) * dim
                    for a, b, v in self.twisted(g):
                        key = (row0 + a, col0 + b)
                        nv = entries.get(key, 0) + eps * v
                        if nv:
                            entries[key] = nv
                        else:
                            entries.pop(key, None)
        m = IntMatrix(self.chain_rank(p - 1), self.chain_rank(p), entries).reduce(self.spec.ring)
        self._bd[p] = m
        return m

    def chain_complex(self, max_degree: int | None = None) -> ChainComplex:
        top = max(self.by_degree) if max_degree is None else min(max_degree, max(self.by_degree))
        ranks = {p: self.chain_rank(p) for p in range(top + 1)}
        bds = {p: self.boundary(p) for p in range(1, top + 1)}
        return ChainComplex(self.spec.ring, ranks, bds)

    def check_dd(self, max_degree: int | None = None) -> None:
        self.chain_complex(max_degree).check_dd()

    def homology(self, max_degree: int | None = None) -> HomologyResult:
        """Homology in degrees ``0..max_degree`` (all degrees by default)."""
        top = max(self.by_degree)
        if (max_degree is None or max_degree >= top) and top == self.full_top:
            return homology(self.chain_complex())
        if max_degree is None or max_degree + 1 > top:
            raise ValueError(f"cells were built up to degree {top}; H_{max_degree} needs degree {max_degree + 1}")
        C = self.chain_complex(max_degree + 1)
        return homology(C, degrees=range(max_degree + 1))


def fn_complex(spec: ConfigSpec, max_degree: int | None = None) -> ChainComplex:
    """The complex computing H_*(F_n(R^d)/G; M); ∂∂ = 0 is checked before returning."""
    C = FNComplex(spec, max_degree).chain_complex()
    C.check_dd()
    return C


def homology_config(spec: ConfigSpec, max_degree: int | None = None) -> HomologyResult:
    if spec.n == 0:
        # the one-point configuration space
        return homology(ChainComplex(spec.ring, {0: spec.module.dim}))
    return FNComplex(spec, None if max_degree is None else max_degree + 1).homology(max_degree)


def _zero_count(w) -> int:
    return sum(1 for x in w if x == 0)


class StabilisationMap:
    """Chain map adding a new point (label ``n``) in front of all others.

    The new point is lex-first and separated in the first coordinate, so
    cells go to cells: ``(tau, w) ↦ ((n,) + tau, (0,) + w)``.  When the
    source group G is smaller than the part of the target group fixing the
    new label, the map includes the transfer over the cosets.
    """

    def __init__(self, src: FNComplex, dst: FNComplex, coeff_map: IntMatrix) -> None:
        A, B = src.spec, dst.spec
        if B.n != A.n + 1 or B.d != A.d:
            raise ValueError("target must have one more point in the same dimension")
        if A.ring != B.ring:
            raise ValueError("rings differ")
        H = B.group
        for g in A.group.generators:
            if not H.contains(g + (A.n,)):
                raise ValueError("source group does not map into the target group")
        if coeff_map.shape != (B.module.dim, A.module.dim):
            raise ValueError("coefficient map has the wrong shape")
        self.src, self.dst = src, dst
        self.phi = coeff_map.reduce(A.ring)
        for g in A.group.generators:
            lhs = (self.phi @ A.module.matrix_of(g)).reduce(A.ring)
            rhs = (B.module.matrix_of(g + (A.n,)) @ self.phi).reduce(A.ring)
            if lhs != rhs:
                raise ValueError("coefficient map is not equivariant")
        K = H.point_stabilizer()
        self.coset_reps = [k + (A.n,) for k in K.left_coset_reps(A.group)] if A.n else [(0,)]
        self._maps: dict[int, IntMatrix] = {}

    def _mover(self, first: int) -> Perm | None:
        """Some h in the target group with h(first) = new label."""
        H = self.dst.spec.group
        new = self.src.spec.n
        if first == new:
            return tuple(range(H.n))
        if H.colors is not None:
            if H.colors[first] != H.colors[new]:
                return None
            g = list(range(H.n))
            g[first], g[new] = new, first
            return tuple(g)
        for h in H.elements:
            if h[first] == new:
                return h
        return None

    def matrix(self, p: int) -> IntMatrix:
        if p in self._maps:
            return self._maps[p]
        A, B = self.src, self.dst
        N = A.spec.n
        d = A.spec.d
        ring = A.spec.ring
        rows, cols = B.chain_rank(p), A.chain_rank(p)
        entries: dict[tuple[int, int], int] = {}
        phi = self.phi.entries
        phi_cols: dict[int, list[tuple[int, int]]] = {}
        for (i, j), v in phi.items():
            phi_cols.setdefault(j, []).append((i, v))
        dimA, dimB = A.dim, B.dim
        for w2 in B.by_degree.get(p, []):
            if N >= 1 and w2[0] != 0:
                continue
            w = w2[1:]
            s = -1 if (_zero_count(w) + d * (p + _zero_count(w))) % 2 else 1
            for rho2 in B.reps:
                h = self._mover(rho2[0])
                if h is None:
                    continue
                row0 = B.block_index(rho2, w2) * dimB
                moved = tuple(h[t] for t in rho2)
                tau = moved[1:]
                hinv = inverse(h)
                for k in self.coset_reps:
                    kinv = inverse(k)
                    rep, g = A.spec.group.orbit_rep(tuple(kinv[t] for t in tau))
                    col0 = A.block_index(rep, w) * dimA
                    # s · L'(h^{-1} k) · phi · L(g)
                    left = B.twisted(compose(hinv, k))
                    left_by_col: dict[int, list[tuple[int, int]]] = {}
                    for a, b, v in left:
                        left_by_col.setdefault(b, []).append((a, v))
                    for a, b, v in A.twisted(g):
                        for i, u in phi_cols.get(a, ()):
                            for r, x in left_by_col.get(i, ()):
                                key = (row0 + r, col0 + b)
                                nv = entries.get(key, 0) + s * x * u * v
                                if nv:
                                    entries[key] = nv
                                else:
                                    entries.pop(key, None)
        m = IntMatrix(rows, cols, entries).reduce(ring)
        self._maps[p] = m
        return m

    def check(self, degrees) -> None:
        ring = self.src.spec.ring
        for p in degrees:
            if p < 1:
                continue
            lhs = (self.dst.boundary(p) @ self.matrix(p)).reduce(ring)
            rhs = (self.matrix(p - 1) @ self.src.boundary(p)).reduce(ring)
            if lhs != rhs:
                raise ChainMapError(f"stabilisation map does not commute with ∂ in degree {p}")

    def induced_rank(self, p: int) -> int:
        """Rank of the induced map on H_p over a field."""
        ring = self.src.spec.ring
        if not ring.is_field:
            raise ValueError("induced ranks are computed over a field")
        dA = self.src.boundary(p)
        dB = self.dst.boundary(p + 1)
        F = self.matrix(p)
        big = block([[dA, None], [F, dB]], [dA.rows, F.rows], [dA.cols, dB.cols])
        return rank(big, ring) - rank(dA, ring) - rank(dB, ring)


def stab_chain_map(
    spec_n: ConfigSpec, spec_n1: ConfigSpec, coeff_map: IntMatrix, max_degree: int | None = None
) -> StabilisationMap:
    """Build and check the stabilisation chain map in degrees ``0..max_degree``."""
    top = max_degree
    src = FNComplex(spec_n, None if top is None else top + 1)
    dst = FNComplex(spec_n1, None if top is None else top + 1)
    f = StabilisationMap(src, dst, coeff_map)
    hi = max(dst.by_degree) if top is None else top + 1
    f.check(range(1, min(hi, max(src.by_degree) + 1, max(dst.by_degree)) + 1))
    return f
