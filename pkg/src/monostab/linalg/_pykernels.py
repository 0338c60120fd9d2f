"""Pure-Python sparse elimination kernels.

Reference implementation of the routines in ``_ckernels.pyx``; used when
the compiled extension is unavailable or ``MONOSTAB_PURE_PYTHON`` is set.
All matrices arrive in CSR form (``indptr``, ``indices``, ``data``).
"""

from __future__ import annotations

from math import gcd


def _column_order(ncols, indices):
    # Sparse columns become early pivots: cheap fill-in heuristic.
    counts = [0] * ncols
    for j in indices:
        counts[j] += 1
    order = sorted(range(ncols), key=lambda j: (counts[j], j))
    relabel = [0] * ncols
    for new, old in enumerate(order):
        relabel[old] = new
    return relabel


def rank_mod_p(nrows, ncols, indptr, indices, data, p):
    relabel = _column_order(ncols, indices)
    rows = []
    for i in range(nrows):
        r = {}
        for k in range(indptr[i], indptr[i + 1]):
            v = data[k] % p
            if v:
                c = relabel[indices[k]]
                v = (r.get(c, 0) + v) % p
                if v:
                    r[c] = v
                else:
                    r.pop(c, None)
        if r:
            rows.append(r)
    rows.sort(key=len)
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                lead = r[c]
                if lead != 1:
                    inv = pow(lead, p - 2, p)
                    r = {k: v * inv % p for k, v in r.items()}
                pivots[c] = r
                rank += 1
                break
            f = r[c]
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    del r[k]
    return rank


def _normalize(r):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = r[min(r)]
    if lead < 0:
        g = -g
    if g != 1:
        r = {k: v // g for k, v in r.items()}
    return r


def rank_int(nrows, ncols, indptr, indices, data):
    """Exact rank over Q of an integer matrix (fraction-free elimination)."""
    relabel = _column_order(ncols, indices)
    rows = []
    for i in range(nrows):
        r = {}
        for k in range(indptr[i], indptr[i + 1]):
            v = data[k]
            if v:
                c = relabel[indices[k]]
                v = r.get(c, 0) + v
                if v:
                    r[c] = v
                else:
                    r.pop(c, None)
        if r:
            rows.append(r)
    rows.sort(key=len)
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _normalize(r)
                rank += 1
                break
            a = piv[c]
            b = r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                r = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                nv = r.get(k, 0) - b * v
                if nv:
                    r[k] = nv
                else:
                    del r[k]
            if r:
                r = _normalize(r)
    return rank
