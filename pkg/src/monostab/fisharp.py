"""Truncated FI#-modules over a field and their polynomial degree.

A module is stored on objects ``0..n_max`` by its dimensions and the images
of the generating morphisms: the insertion ``ι_n: n → n+1`` (new element
last), the deletion ``n → n-1`` forgetting the last element, and the
adjacent transpositions ``s_i = (i i+1)``.  Every partial injection factors
through these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import Ring
from .linalg.dense import _coerce, matmul, rref
from .linalg.matrix import IntMatrix
from .rep import GradedBettiTable, KunnethModule, SubgroupSpec, transposition, unit_insertion


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over a field, shape kept explicitly so empty blocks compose."""

    rows: int
    cols: int
    data: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, ring: Ring, rows: int, cols: int, data) -> "FieldMatrix":
        return cls(rows, cols, tuple(tuple(_coerce(ring, x) for x in r) for r in data))

    @classmethod
    def from_int(cls, ring: Ring, A: IntMatrix) -> "FieldMatrix":
        return cls.from_rows(ring, A.rows, A.cols, A.to_dense())

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "FieldMatrix":
        return cls.from_rows(ring, n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def matmul(self, other: "FieldMatrix", ring: Ring) -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return FieldMatrix.from_rows(ring, self.rows, other.cols, [[0] * other.cols for _ in range(self.rows)])
        out = matmul([list(r) for r in self.data], [list(r) for r in other.data], ring)
        return FieldMatrix(self.rows, other.cols, tuple(tuple(r) for r in out))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )


def _chain(ring: Ring, *mats: FieldMatrix) -> FieldMatrix:
    out = mats[-1]
    for m in reversed(mats[:-1]):
        out = m.matmul(out, ring)
    return out


@dataclass(frozen=True)
class FISharpModule:
    """``dims[n] = dim T(n)``; ``iota[n]: T(n) → T(n+1)``; ``deletion[n]: T(n) → T(n-1)``
    (``deletion[0]`` is None); ``swaps[n][i]`` is the action of ``(i i+1)`` on T(n)."""

    field: Ring
    n_max: int
    dims: tuple[int, ...]
    iota: tuple[FieldMatrix, ...]
    deletion: tuple[FieldMatrix | None, ...]
    swaps: tuple[tuple[FieldMatrix, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not self.field.is_field:
            raise ValueError("FI#-modules are taken over a field")
        if len(self.dims) != self.n_max + 1:
            raise ValueError("need one dimension per object 0..n_max")
        for n, m in enumerate(self.iota):
            if (m.rows, m.cols) != (self.dims[n + 1], self.dims[n]):
                raise ValueError(f"ι_{n} has the wrong shape")
        for n, m in enumerate(self.deletion):
            if n and (m.rows, m.cols) != (self.dims[n - 1], self.dims[n]):
                raise ValueError(f"deletion at {n} has the wrong shape")
        for n, ss in enumerate(self.swaps):
            if len(ss) != max(n - 1, 0):
                raise ValueError(f"need {max(n - 1, 0)} transpositions on T({n})")

    @classmethod
    def zero(cls, field: Ring, n_max: int) -> "FISharpModule":
        z = FieldMatrix(0, 0, ())
        return cls(
            field,
            n_max,
            (0,) * (n_max + 1),
            tuple(z for _ in range(n_max)),
            (None,) + tuple(z for _ in range(n_max)),
            tuple(tuple(z for _ in range(max(n - 1, 0))) for n in range(n_max + 1)),
            "0",
        )

    @classmethod
    def constant(cls, field: Ring, n_max: int) -> "FISharpModule":
        """The constant module: K everywhere, ι and transpositions act by 1, deletion by 1."""
        one = FieldMatrix.identity(field, 1)
        return cls(
            field,
            n_max,
            (1,) * (n_max + 1),
            tuple(one for _ in range(n_max)),
            (None,) + tuple(one for _ in range(n_max)),
            tuple(tuple(one for _ in range(max(n - 1, 0))) for n in range(n_max + 1)),
            "K",
        )

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims)

    def permutation(self, n: int, g: Sequence[int]) -> FieldMatrix:
        """Action of an arbitrary permutation of ``n``, via adjacent transpositions."""
        g = list(g)
        out = FieldMatrix.identity(self.field, self.dims[n])
        # each swap of adjacent images is g := g ∘ s_i, so sorting by the word
        # w_1..w_k gives g = s_{w_k} ∘ ... ∘ s_{w_1}
        word = []
        cur = g[:]
        changed = True
        while changed:
            changed = False
            for i in range(n - 1):
                if cur[i] > cur[i + 1]:
                    cur[i], cur[i + 1] = cur[i + 1], cur[i]
                    word.append(i)
                    changed = True
        for i in word:
            out = self.swaps[n][i].matmul(out, self.field)
        return out

    def relation_failures(self) -> list[str]:
        """Check the FI# relations available within the truncation."""
        ring = self.field
        bad = []
        for n in range(self.n_max):
            # forgetting the freshly inserted element undoes the insertion
            if not _chain(ring, self.deletion[n + 1], self.iota[n]).is_identity() and self.dims[n]:
                bad.append(f"deletion∘ι_{n} ≠ id")
            for i in range(n - 1):
                lhs = _chain(ring, self.iota[n], self.swaps[n][i])
                rhs = _chain(ring, self.swaps[n + 1][i], self.iota[n])
                if lhs != rhs:
                    bad.append(f"ι_{n} not equivariant for s_{i}")
        for n in range(self.n_max + 1):
            for i in range(n - 1):
                if self.dims[n] and not _chain(ring, self.swaps[n][i], self.swaps[n][i]).is_identity():
                    bad.append(f"s_{i}² ≠ id on T({n})")
            for i in range(n - 2):
                a, b = self.swaps[n][i], self.swaps[n][i + 1]
                if _chain(ring, a, b, a) != _chain(ring, b, a, b):
                    bad.append(f"braid relation fails at {i} on T({n})")
        return bad


def _kunneth(z: GradedBettiTable, y: GradedBettiTable, q: int, n: int, field: Ring) -> KunnethModule:
    return KunnethModule([z] * n, y, q, SubgroupSpec.symmetric(n), field)


def make_TZYq(z, y, q: int, field: Ring, n_max: int) -> FISharpModule:
    """The module ``n ↦ H_q(Z^n × Y; K)``.

    Insertion puts the unit class in the new slot; deletion pairs the
    forgotten slot's class against the unit.
    """
    z = z if isinstance(z, GradedBettiTable) else GradedBettiTable(tuple(z))
    y = y if isinstance(y, GradedBettiTable) else GradedBettiTable(tuple(y))
    if q < 0:
        raise ValueError("q must be nonnegative")
    mods = [_kunneth(z, y, q, n, field) for n in range(n_max + 1)]
    iota = tuple(FieldMatrix.from_int(field, unit_insertion(mods[n], mods[n + 1])) for n in range(n_max))
    deletion: list[FieldMatrix | None] = [None]
    for n in range(1, n_max + 1):
        src, dst = mods[n], mods[n - 1]
        data = [[0] * src.dim for _ in range(dst.dim)]
        for i, b in enumerate(src.basis):
            if b[n - 1] == 0:
                data[dst.index[b[: n - 1] + b[n:]]][i] = 1
        deletion.append(FieldMatrix.from_rows(field, dst.dim, src.dim, data))
    swaps = tuple(
        tuple(FieldMatrix.from_int(field, mods[n].matrix_of(transposition(n, i, i + 1))) for i in range(n - 1))
        for n in range(n_max + 1)
    )
    return FISharpModule(
        field,
        n_max,
        tuple(m.dim for m in mods),
        iota,
        tuple(deletion),
        swaps,
        f"T[z={list(z.betti)}, y={list(y.betti)}, q={q}]",
    )


def delta(T: FISharpModule) -> FISharpModule:
    """ΔT(n) = coker(ι_n: T(n) → T(n+1)) with the induced structure maps."""
    if T.n_max < 1:
        raise ValueError("Δ needs n_max ≥ 1")
    ring = T.field
    N = T.n_max - 1
    Q: list[FieldMatrix] = []
    L: list[FieldMatrix] = []
    for n in range(N + 1):
        A = T.iota[n]
        big = T.dims[n + 1]
        if A.cols == 0 or A.rows == 0:
            J = list(range(big))
            Qrows = [[int(i == j) for i in range(big)] for j in J]
        else:
            J, Qrows = _cokernel(A, ring)
        Q.append(FieldMatrix.from_rows(ring, len(J), big, Qrows))
        L.append(FieldMatrix.from_rows(ring, big, len(J), [[int(r == j) for j in J] for r in range(big)]))
    dims = tuple(m.rows for m in Q)
    iota = tuple(
        _chain(ring, Q[n + 1], T.swaps[n + 2][n], T.iota[n + 1], L[n]) for n in range(N)
    )
    deletion: list[FieldMatrix | None] = [None]
    for n in range(1, N + 1):
        deletion.append(_chain(ring, Q[n - 1], T.deletion[n + 1], T.swaps[n + 1][n - 1], L[n]))
    swaps = tuple(
        tuple(_chain(ring, Q[n], T.swaps[n + 1][i], L[n]) for i in range(n - 1)) for n in range(N + 1)
    )
    return FISharpModule(ring, N, dims, iota, tuple(deletion), swaps, f"Δ{T.label}")


def _cokernel(A: FieldMatrix, ring: Ring) -> tuple[list[int], list[list]]:
    """Standard-basis complement ``J`` of the image and the projection onto it."""
    n = A.rows
    cols = [[A.data[i][j] for i in range(n)] for j in range(A.cols)]
    R, piv = rref(cols, ring)
    pivset = set(piv)
    J = [j for j in range(n) if j not in pivset]
    p = ring.p if ring.kind == "Fp" else 0
    Qrows = []
    for j in J:
        row = [_coerce(ring, 0)] * n
        row[j] = _coerce(ring, 1)
        for i, pc in enumerate(piv):
            if R[i][j]:
                row[pc] = (row[pc] - R[i][j]) % p if p else row[pc] - R[i][j]
        Qrows.append(row)
    return J, Qrows


def delta_power(T: FISharpModule, k: int) -> FISharpModule:
    for _ in range(k):
        T = delta(T)
    return T


@dataclass(frozen=True)
class DegreeCertificate:
    """Outcome of checking ``deg T ≤ bound`` on a truncation.

    ``values`` lists dim Δ^{bound+1}T(n) for ``n = 0..verified_up_to``.
    """

    bound: int
    status: str
    n_max: int
    verified_up_to: int | None
    values: tuple[int, ...] = ()
    witness_n: int | None = None
    witness_dim: int | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.status not in ("verified", "refuted", "inconclusive"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "refuted" and not (self.witness_dim and self.witness_dim > 0):
            raise ValueError("a refuted certificate needs a nonzero witness")

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "status": self.status,
            "n_max": self.n_max,
            "verified_up_to": self.verified_up_to,
            "delta_dims": list(self.values),
            "witness": None
            if self.witness_n is None
            else {"n": self.witness_n, "cokernel_dim": self.witness_dim},
            "module": self.label,
        }


def degree_bound(T: FISharpModule, d: int) -> DegreeCertificate:
    """Check ``deg T ≤ d`` by computing Δ^{d+1}T on the truncation."""
    if d < -1:
        raise ValueError("degree bounds start at -1")
    k = d + 1
    if T.n_max < k:
        return DegreeCertificate(d, "inconclusive", T.n_max, None, label=T.label)
    D = delta_power(T, k)
    values = D.dims
    for n, v in enumerate(values):
        if v:
            return DegreeCertificate(d, "refuted", T.n_max, None, values, n, v, T.label)
    return DegreeCertificate(d, "verified", T.n_max, D.n_max, values, label=T.label)


def dimensions(T: FISharpModule) -> tuple[int, ...]:
    return T.dims


__all__ = [
    "DegreeCertificate",
    "FISharpModule",
    "FieldMatrix",
    "degree_bound",
    "delta",
    "delta_power",
    "make_TZYq",
]
