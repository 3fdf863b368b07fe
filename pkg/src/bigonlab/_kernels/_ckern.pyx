# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel implementations; see _pykern for the semantics."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def four_point_double_delta(cnp.int32_t[:, :] dist):
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef long long a, b, c, mx, md, best = 0
    cdef long long dij, dik, dil
    for i in range(n):
        for j in range(i + 1, n):
            dij = dist[i, j]
            for k in range(j + 1, n):
                dik = dist[i, k]
                for l in range(k + 1, n):
                    dil = dist[i, l]
                    a = dij + dist[k, l]
                    b = dik + dist[j, l]
                    c = dil + dist[j, k]
                    if a >= b:
                        mx = a; md = b
                    else:
                        mx = b; md = a
                    if c > mx:
                        md = mx; mx = c
                    elif c > md:
                        md = c
                    if mx - md > best:
                        best = mx - md
    return int(best)


def block_pair_stats(cnp.int32_t[:, :] dist, cnp.int32_t[:] depth, long radius,
                     cnp.int32_t[:, :] P, cnp.int32_t[:, :] Q, bint triangular,
                     long long start, long long limit,
                     cnp.int64_t[:] xs, long small_cap):
    cdef Py_ssize_t g0 = P.shape[0]
    cdef Py_ssize_t g1 = Q.shape[0]
    cdef Py_ssize_t m = P.shape[1]
    cdef Py_ssize_t q = xs.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] exc_max = np.zeros(q, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] exc_arg = np.full(q, -1, dtype=np.int64)
    cdef cnp.int64_t[:] emax = exc_max
    cdef cnp.int64_t[:] earg = exc_arg
    cdef long long consumed = 0, untrusted = 0
    cdef long long width_max = -1, width_arg = -1
    cdef long long gap_max = -1, gap_arg = -1
    cdef Py_ssize_t i, j, k, t, j0
    cdef long w, wmax, gap, gmax, last_small
    cdef long long cnt
    cdef int bad
    cdef cnp.ndarray[cnp.int32_t, ndim=1] wbuf = np.empty(m, dtype=np.int32)
    cdef cnp.int32_t[:] wrow = wbuf
    cdef cnp.int32_t x1, y1

    for i in range(g0):
        if consumed >= limit:
            break
        j0 = i + 1 if triangular else 0
        for j in range(j0, g1):
            if consumed >= limit:
                break
            wmax = -1
            bad = 0
            for t in range(m):
                x1 = P[i, t]
                y1 = Q[j, t]
                w = dist[x1, y1]
                wrow[t] = <cnp.int32_t> w
                if w > wmax:
                    wmax = w
                if (depth[x1] if depth[x1] < depth[y1] else depth[y1]) + w > radius:
                    bad = 1
            if bad:
                untrusted += 1
            if wmax > width_max:
                width_max = wmax
                width_arg = start + consumed
            for k in range(q):
                cnt = 0
                for t in range(m):
                    if wrow[t] > xs[k]:
                        cnt += 1
                if cnt > emax[k]:
                    emax[k] = cnt
                    earg[k] = start + consumed
            gmax = 0
            last_small = -1
            for t in range(m):
                if wrow[t] <= small_cap:
                    if last_small >= 0 and t - last_small > gmax:
                        gmax = t - last_small
                    last_small = t
            if gmax > gap_max:
                gap_max = gmax
                gap_arg = start + consumed
            consumed += 1

    return {
        "consumed": int(consumed),
        "untrusted": int(untrusted),
        "exc_max": exc_max,
        "exc_arg": exc_arg,
        "width_max": int(width_max),
        "width_arg": int(width_arg),
        "gap_max": int(gap_max),
        "gap_arg": int(gap_arg),
    }
