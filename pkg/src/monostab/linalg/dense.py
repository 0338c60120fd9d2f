"""Small dense linear algebra over a field (Q via Fraction, or F_p).

Used where explicit bases are needed (cokernels, sections), not just ranks.
"""

from __future__ import annotations

from fractions import Fraction

from .matrix import IntMatrix, Ring


def _coerce(ring: Ring, x):
    if ring.kind == "Fp":
        return int(x) % ring.p
    return Fraction(x)


def _inv(ring: Ring, x):
    if ring.kind == "Fp":
        return pow(int(x), -1, ring.p)
    return 1 / x


def to_field_rows(A: IntMatrix, ring: Ring) -> list[list]:
    zero = _coerce(ring, 0)
    out = [[zero] * A.cols for _ in range(A.rows)]
    for (i, j), v in A.entries.items():
        out[i][j] = _coerce(ring, v)
    return out


def rref(rows: list[list], ring: Ring) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a list of field rows; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    p = ring.p if ring.kind == "Fp" else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = _inv(ring, M[r][c])
        M[r] = [(x * inv) % p if p else x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                row_r = M[r]
                if p:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], row_r)]
                else:
                    M[i] = [a - f * b for a, b in zip(M[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def cokernel_section(A: IntMatrix, ring: Ring) -> tuple[list[int], list[list]]:
    """Split the cokernel of ``A: K^m -> K^n``.

    Returns ``(J, Q)`` where the standard vectors ``e_j`` (j in J) span a
    complement of the image, and ``Q`` (|J| x n, field entries) projects
    onto that complement along the image.
    """
    n = A.rows
    R, piv = rref(to_field_rows(A.transpose(), ring), ring)
    pivset = set(piv)
    J = [j for j in range(n) if j not in pivset]
    p = ring.p if ring.kind == "Fp" else 0
    zero, one = _coerce(ring, 0), _coerce(ring, 1)
    Q = []
    for j in J:
        row = [zero] * n
        row[j] = one
        for i, pc in enumerate(piv):
            if R[i][j]:
                row[pc] = (row[pc] - R[i][j]) % p if p else row[pc] - R[i][j]
        Q.append(row)
    return J, Q


def matmul(A: list[list], B: list[list], ring: Ring) -> list[list]:
    if not A:
        return []
    p = ring.p if ring.kind == "Fp" else 0
    m, k = len(A), len(B)
    n = len(B[0]) if B else 0
    zero = _coerce(ring, 0)
    out = [[zero] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    if Bt[j]:
                        oi[j] += a * Bt[j]
        if p:
            out[i] = [x % p for x in oi]
    return out


def field_rank(rows: list[list], ring: Ring) -> int:
    return len(rref(rows, ring)[1])
