# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled sparse elimination kernels (same contract as ``_pykernels``)."""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort as stdsort

ctypedef long long i64
ctypedef pair[int, i64] entry
ctypedef vector[entry] row_t


cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int mul_ovf(i64 a, i64 b, i64 *r) nogil
    int sub_ovf(i64 a, i64 b, i64 *r) nogil


cdef vector[int] _column_order(int ncols, indices):
    cdef vector[int] counts = vector[int](ncols, 0)
    cdef int j
    for j in indices:
        counts[j] += 1
    order = sorted(range(ncols), key=lambda c: (counts[c], c))
    cdef vector[int] relabel = vector[int](ncols, 0)
    cdef int new = 0
    for old in order:
        relabel[old] = new
        new += 1
    return relabel


cdef bint _row_len_less(const row_t& a, const row_t& b) nogil:
    return a.size() < b.size()


cdef vector[row_t] _load_rows(int nrows, indptr, indices, data, vector[int]& relabel, i64 p) except *:
    cdef vector[row_t] rows
    cdef row_t r
    cdef int i, k, c, nout
    cdef i64 v
    for i in range(nrows):
        r.clear()
        for k in range(indptr[i], indptr[i + 1]):
            v = data[k]
            if p:
                v %= p
                if v < 0:
                    v += p
            if v:
                r.push_back(entry(relabel[indices[k]], v))
        if r.size() == 0:
            continue
        stdsort(r.begin(), r.end())
        # merge duplicate columns
        nout = 0
        for k in range(<int>r.size()):
            if nout and r[nout - 1].first == r[k].first:
                r[nout - 1].second += r[k].second
                if p:
                    r[nout - 1].second %= p
            else:
                r[nout] = r[k]
                nout += 1
        r.resize(nout)
        k = 0
        for c in range(nout):
            if r[c].second != 0:
                r[k] = r[c]
                k += 1
        r.resize(k)
        if r.size():
            rows.push_back(r)
    return rows


cdef i64 _inv_mod(i64 a, i64 p) nogil:
    cdef i64 t = 0, newt = 1, rr = p, newr = a, q, tmp
    while newr != 0:
        q = rr // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = rr - q * newr
        rr = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(int nrows, int ncols, indptr, indices, data, long long p):
    cdef vector[int] relabel = _column_order(ncols, indices)
    cdef vector[row_t] rows = _load_rows(nrows, indptr, indices, data, relabel, p)
    cdef vector[int] pivot_of = vector[int](ncols, -1)
    cdef vector[row_t] pivots
    cdef row_t r, out
    cdef int rank = 0, c, idx, a_i, b_i, na, nb
    cdef i64 f, inv, v
    cdef size_t ri
    stdsort(rows.begin(), rows.end(), _row_len_less)
    for ri in range(rows.size()):
        r = rows[ri]
        while r.size():
            c = r[0].first
            idx = pivot_of[c]
            if idx < 0:
                if r[0].second != 1:
                    inv = _inv_mod(r[0].second, p)
                    for a_i in range(<int>r.size()):
                        r[a_i].second = (r[a_i].second * inv) % p
                pivot_of[c] = <int>pivots.size()
                pivots.push_back(r)
                rank += 1
                break
            f = r[0].second
            out.clear()
            na = <int>r.size()
            nb = <int>pivots[idx].size()
            a_i = 1
            b_i = 1
            while a_i < na or b_i < nb:
                if b_i >= nb or (a_i < na and r[a_i].first < pivots[idx][b_i].first):
                    out.push_back(r[a_i])
                    a_i += 1
                elif a_i >= na or pivots[idx][b_i].first < r[a_i].first:
                    v = (p - (f * pivots[idx][b_i].second) % p) % p
                    if v:
                        out.push_back(entry(pivots[idx][b_i].first, v))
                    b_i += 1
                else:
                    v = (r[a_i].second - (f * pivots[idx][b_i].second) % p) % p
                    if v < 0:
                        v += p
                    if v:
                        out.push_back(entry(r[a_i].first, v))
                    a_i += 1
                    b_i += 1
            r.swap(out)
    return rank


cdef i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _normalize(row_t& r) nogil:
    cdef i64 g = 0
    cdef size_t k
    for k in range(r.size()):
        g = _gcd(g, r[k].second)
        if g == 1:
            break
    if r[0].second < 0:
        g = -g
    if g != 1:
        for k in range(r.size()):
            r[k].second = r[k].second // g


def rank_int(int nrows, int ncols, indptr, indices, data):
    """Exact rank over Q; raises OverflowError if int64 is not enough."""
    cdef vector[int] relabel = _column_order(ncols, indices)
    cdef vector[row_t] rows = _load_rows(nrows, indptr, indices, data, relabel, 0)
    cdef vector[int] pivot_of = vector[int](ncols, -1)
    cdef vector[row_t] pivots
    cdef row_t r, out
    cdef int rank = 0, c, idx, a_i, b_i, na, nb
    cdef i64 a, b, g, v, t1, t2
    cdef size_t ri
    stdsort(rows.begin(), rows.end(), _row_len_less)
    for ri in range(rows.size()):
        r = rows[ri]
        while r.size():
            c = r[0].first
            idx = pivot_of[c]
            if idx < 0:
                _normalize(r)
                pivot_of[c] = <int>pivots.size()
                pivots.push_back(r)
                rank += 1
                break
            a = pivots[idx][0].second
            b = r[0].second
            g = _gcd(a, b)
            a //= g
            b //= g
            out.clear()
            na = <int>r.size()
            nb = <int>pivots[idx].size()
            a_i = 1
            b_i = 1
            while a_i < na or b_i < nb:
                if b_i >= nb or (a_i < na and r[a_i].first < pivots[idx][b_i].first):
                    if mul_ovf(a, r[a_i].second, &v):
                        raise OverflowError("int64 overflow in rank_int")
                    out.push_back(entry(r[a_i].first, v))
                    a_i += 1
                elif a_i >= na or pivots[idx][b_i].first < r[a_i].first:
                    if mul_ovf(b, pivots[idx][b_i].second, &t2) or sub_ovf(0, t2, &v):
                        raise OverflowError("int64 overflow in rank_int")
                    out.push_back(entry(pivots[idx][b_i].first, v))
                    b_i += 1
                else:
                    if (mul_ovf(a, r[a_i].second, &t1) or mul_ovf(b, pivots[idx][b_i].second, &t2)
                            or sub_ovf(t1, t2, &v)):
                        raise OverflowError("int64 overflow in rank_int")
                    if v:
                        out.push_back(entry(r[a_i].first, v))
                    a_i += 1
                    b_i += 1
            r.swap(out)
            if r.size():
                _normalize(r)
    return rank
