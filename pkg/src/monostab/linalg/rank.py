"""Exact rank over Z, Q and prime fields."""

from __future__ import annotations

from . import _backend
from .matrix import IntMatrix, Ring


def to_csr(A: IntMatrix) -> tuple[list[int], list[int], list[int]]:
    rows = A.row_dicts()
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    for r in rows:
        for j in sorted(r):
            indices.append(j)
            data.append(r[j])
        indptr.append(len(indices))
    return indptr, indices, data


def rank(A: IntMatrix, ring: Ring, backend: str | None = None) -> int:
    """Rank of ``A`` over ``ring``; over Z this is the rational rank."""
    if A.nnz == 0:
        return 0
    # fewer, longer rows reduce faster than many short ones
    M = A if A.rows <= A.cols else A.transpose()
    indptr, indices, data = to_csr(M)
    if ring.kind == "Fp":
        return _backend.rank_mod_p(M.rows, M.cols, indptr, indices, data, ring.p, backend=backend)
    return _backend.rank_int(M.rows, M.cols, indptr, indices, data, backend=backend)
