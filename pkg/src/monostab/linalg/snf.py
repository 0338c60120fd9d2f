"""Smith normal form over the integers.

``smith_normal_form`` returns the full decomposition ``D = U A V`` for small
matrices.  ``invariant_factors`` is the route used for homology: it first
clears unit pivots sparsely (unimodular operations, so the invariant
factors are unchanged) and only densifies the remaining core.
"""

from __future__ import annotations

from math import gcd

from .matrix import IntMatrix


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _pick_pivot(D: list[list[int]], t: int) -> tuple[int, int] | None:
    m, n = len(D), len(D[0]) if D else 0
    row_nnz = [sum(1 for j in range(t, n) if D[i][j]) for i in range(m)]
    col_nnz = [sum(1 for i in range(t, m) if D[i][j]) for j in range(n)]
    best = None
    best_key = None
    for i in range(t, m):
        for j in range(t, n):
            v = D[i][j]
            if v:
                # smallest magnitude first, Markowitz fill-in count breaks ties
                key = (abs(v), (row_nnz[i] - 1) * (col_nnz[j] - 1), i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
    return best


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``D = U @ A @ V``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal, nonnegative, and its diagonal entries form a
    divisibility chain.
    """
    m, n = A.rows, A.cols
    D = A.to_dense()
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        if q:
            rd, rs = D[dst], D[src]
            for k in range(n):
                if rs[k]:
                    rd[k] += q * rs[k]
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst: int, src: int, q: int) -> None:
        if q:
            for row in D:
                if row[src]:
                    row[dst] += q * row[src]
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        piv = _pick_pivot(D, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if not done:
                # a smaller remainder survived; move it to the corner
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < abs(D[best[0]][best[1]])):
                        best = (i, t)
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < abs(D[best[0]][best[1]])):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return IntMatrix.from_dense(D, n), IntMatrix.from_dense(U, m), IntMatrix.from_dense(V, n)


def _dense_invariant_factors(D: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense matrix (no transforms kept)."""
    if not D or not D[0]:
        return []
    A = IntMatrix.from_dense(D)
    Dm, _, _ = smith_normal_form(A)
    return [Dm.entries[(i, i)] for i in range(min(Dm.rows, Dm.cols)) if (i, i) in Dm.entries]


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form of ``A``, in divisibility order."""
    rows = A.row_dicts()
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(rows) if r)
    units = 0
    while True:
        best = None
        best_cost = None
        for i in alive:
            r = rows[i]
            for j, v in r.items():
                if v == 1 or v == -1:
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best_cost is None or cost < best_cost:
                        best, best_cost = (i, j), cost
                        if cost == 0:
                            break
            if best_cost == 0:
                break
        if best is None:
            break
        pi, pj = best
        prow = rows[pi]
        pv = prow[pj]
        for i in list(cols[pj]):
            if i == pi:
                continue
            r = rows[i]
            f = r[pj] * pv  # pv = +-1, so r[pj]/pv = r[pj]*pv
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        cols.setdefault(j, set()).add(i)
                    r[j] = nv
                else:
                    if j in r:
                        del r[j]
                        cols[j].discard(i)
            if not r:
                alive.discard(i)
        for j in prow:
            cols[j].discard(pi)
        rows[pi] = {}
        alive.discard(pi)
        units += 1
    # dense core
    core_rows = sorted(alive)
    core_cols = sorted({j for i in core_rows for j in rows[i]})
    factors = [1] * units
    if core_rows:
        cidx = {j: k for k, j in enumerate(core_cols)}
        dense = [[0] * len(core_cols) for _ in core_rows]
        for a, i in enumerate(core_rows):
            for j, v in rows[i].items():
                dense[a][cidx[j]] = v
        factors += _dense_invariant_factors(dense)
    return factors


def is_smith_form(D: IntMatrix) -> bool:
    prev = None
    for (i, j), v in D.entries.items():
        if i != j or v <= 0:
            return False
    diag = [D.entries.get((i, i), 0) for i in range(min(D.rows, D.cols))]
    seen_zero = False
    for v in diag:
        if v == 0:
            seen_zero = True
            continue
        if seen_zero:
            return False
        if prev is not None and v % prev:
            return False
        prev = v
    return True


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    M = A.to_dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
