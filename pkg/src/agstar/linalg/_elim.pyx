# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact elimination kernels.

Same contract as `_elim_py`: Markowitz pivoting for ranks, strict
left-to-right pivoting for rank profiles, fraction-free updates over the
integers.  Arithmetic runs in 64-bit words with 128-bit intermediates; the
rational-path functions signal overflow (rank -1 / None) instead of
producing a wrong answer, and the caller retries with the pure-Python
big-integer kernel.
"""

import numpy as np

HAVE_COMPILED = True

ctypedef long long i64

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef i64 _LIMIT = (<i64>1) << 62


cdef inline i64 _inv_mod(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    t = t % p
    if t < 0:
        t += p
    return t


def rank_mod_p(i64[:, ::1] a, i64 p):
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r, c, pr, pc
    cdef i64 v, inv, factor, cost, best_cost
    cdef int rank = 0
    if m == 0 or n == 0:
        return 0
    for r in range(m):
        for c in range(n):
            v = a[r, c] % p
            if v < 0:
                v += p
            a[r, c] = v
    ra_arr = np.ones(m, dtype=np.int64)
    ca_arr = np.ones(n, dtype=np.int64)
    rn_arr = np.zeros(m, dtype=np.int64)
    cn_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] ra = ra_arr
    cdef i64[::1] ca = ca_arr
    cdef i64[::1] rn = rn_arr
    cdef i64[::1] cn = cn_arr
    while True:
        for r in range(m):
            rn[r] = 0
        for c in range(n):
            cn[c] = 0
        for r in range(m):
            if not ra[r]:
                continue
            for c in range(n):
                if ca[c] and a[r, c]:
                    rn[r] += 1
                    cn[c] += 1
        best_cost = -1
        pr = -1
        pc = -1
        for r in range(m):
            if not ra[r] or rn[r] == 0:
                continue
            for c in range(n):
                if ca[c] and a[r, c]:
                    cost = (rn[r] - 1) * (cn[c] - 1)
                    if best_cost < 0 or cost < best_cost:
                        best_cost = cost
                        pr = r
                        pc = c
        if pr < 0:
            return rank
        rank += 1
        inv = _inv_mod(a[pr, pc], p)
        for r in range(m):
            if not ra[r] or r == pr or a[r, pc] == 0:
                continue
            factor = (a[r, pc] * inv) % p
            for c in range(n):
                if not ca[c]:
                    continue
                v = (a[r, c] - factor * a[pr, c]) % p
                if v < 0:
                    v += p
                a[r, c] = v
        ra[pr] = 0
        ca[pc] = 0


def rank_bareiss(i64[:, ::1] a):
    """Fraction-free rank over the integers; -1 on 64-bit overflow risk."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r, c, pr, pc
    cdef i64 piv, arp, cost, best_cost
    cdef i128 t, prev = 1
    cdef int rank = 0
    if m == 0 or n == 0:
        return 0
    ra_arr = np.ones(m, dtype=np.int64)
    ca_arr = np.ones(n, dtype=np.int64)
    rn_arr = np.zeros(m, dtype=np.int64)
    cn_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] ra = ra_arr
    cdef i64[::1] ca = ca_arr
    cdef i64[::1] rn = rn_arr
    cdef i64[::1] cn = cn_arr
    while True:
        for r in range(m):
            rn[r] = 0
        for c in range(n):
            cn[c] = 0
        for r in range(m):
            if not ra[r]:
                continue
            for c in range(n):
                if ca[c] and a[r, c]:
                    rn[r] += 1
                    cn[c] += 1
        best_cost = -1
        pr = -1
        pc = -1
        for r in range(m):
            if not ra[r] or rn[r] == 0:
                continue
            for c in range(n):
                if ca[c] and a[r, c]:
                    cost = (rn[r] - 1) * (cn[c] - 1)
                    if best_cost < 0 or cost < best_cost:
                        best_cost = cost
                        pr = r
                        pc = c
        if pr < 0:
            return rank
        rank += 1
        piv = a[pr, pc]
        for r in range(m):
            if not ra[r] or r == pr:
                continue
            arp = a[r, pc]
            for c in range(n):
                if not ca[c]:
                    continue
                t = (<i128>piv) * (<i128>a[r, c]) - (<i128>arp) * (<i128>a[pr, c])
                t = t / prev
                if t > _LIMIT or t < -_LIMIT:
                    return -1
                a[r, c] = <i64>t
        ra[pr] = 0
        ca[pc] = 0
        prev = piv


def rank_profile_mod_p(i64[:, ::1] a, i64 p):
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r, c, pr, pc
    cdef i64 v, inv, factor
    pivots = []
    if m == 0 or n == 0:
        return 0, ()
    for r in range(m):
        for c in range(n):
            v = a[r, c] % p
            if v < 0:
                v += p
            a[r, c] = v
    ra_arr = np.ones(m, dtype=np.int64)
    cdef i64[::1] ra = ra_arr
    for pc in range(n):
        pr = -1
        for r in range(m):
            if ra[r] and a[r, pc]:
                pr = r
                break
        if pr < 0:
            continue
        pivots.append(pc)
        inv = _inv_mod(a[pr, pc], p)
        for r in range(m):
            if not ra[r] or r == pr or a[r, pc] == 0:
                continue
            factor = (a[r, pc] * inv) % p
            for c in range(pc, n):
                v = (a[r, c] - factor * a[pr, c]) % p
                if v < 0:
                    v += p
                a[r, c] = v
        ra[pr] = 0
    return len(pivots), tuple(pivots)


def rank_profile_bareiss(i64[:, ::1] a):
    """Left-to-right fraction-free profile; None on overflow risk."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r, c, pr, pc
    cdef i64 piv, arp
    cdef i128 t, prev = 1
    pivots = []
    if m == 0 or n == 0:
        return 0, ()
    ra_arr = np.ones(m, dtype=np.int64)
    cdef i64[::1] ra = ra_arr
    for pc in range(n):
        pr = -1
        for r in range(m):
            if ra[r] and a[r, pc]:
                pr = r
                break
        if pr < 0:
            continue
        pivots.append(pc)
        piv = a[pr, pc]
        for r in range(m):
            if not ra[r] or r == pr:
                continue
            arp = a[r, pc]
            for c in range(pc, n):
                t = (<i128>piv) * (<i128>a[r, c]) - (<i128>arp) * (<i128>a[pr, c])
                t = t / prev
                if t > _LIMIT or t < -_LIMIT:
                    return None
                a[r, c] = <i64>t
        ra[pr] = 0
        prev = piv
    return len(pivots), tuple(pivots)
