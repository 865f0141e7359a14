# Compiled twins of pykernels: same floating-point operation order.

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "c"


def gini_best_split(x, y, w):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ya = np.ascontiguousarray(y, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wa = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0]
    if n < 2:
        return np.inf, 0.0, False
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order = np.argsort(xa, kind="stable")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = xa[order]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws = wa[order]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ys = ya[order]

    cdef double tot0 = 0.0, tot1 = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if ys[i] == 0:
            tot0 += ws[i]
        else:
            tot1 += ws[i]
    cdef double total = tot0 + tot1

    cdef double l0 = 0.0, l1 = 0.0
    cdef double wl, wr, r0, r1, a, b, gl, gr, imp
    cdef double best_imp = np.inf
    cdef double best_thr = 0.0
    cdef bint found = False
    for i in range(1, n):
        if ys[i - 1] == 0:
            l0 += ws[i - 1]
        else:
            l1 += ws[i - 1]
        if xs[i] <= xs[i - 1]:
            continue
        wl = l0 + l1
        r0 = tot0 - l0
        r1 = tot1 - l1
        wr = r0 + r1
        if wl <= 0.0 or wr <= 0.0:
            continue
        a = l0 / wl
        b = l1 / wl
        gl = 1.0 - a * a - b * b
        a = r0 / wr
        b = r1 / wr
        gr = 1.0 - a * a - b * b
        imp = (wl * gl + wr * gr) / total
        if imp < best_imp:
            best_imp = imp
            best_thr = (xs[i - 1] + xs[i]) * 0.5
            found = True
    if not found:
        return np.inf, 0.0, False
    return best_imp, best_thr, True


def pairwise_sq_dists(queries, points):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] q = np.ascontiguousarray(queries, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t nq = q.shape[0], np_ = p.shape[0], d = p.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nq, np_), dtype=np.float64)
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    for i in range(nq):
        for j in range(np_):
            acc = 0.0
            for k in range(d):
                diff = p[j, k] - q[i, k]
                acc += diff * diff
            out[i, j] = acc
    return out


def joint_counts(a, b, na, nb):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((na, nb), dtype=np.int64)
    cdef Py_ssize_t i, n = aa.shape[0]
    for i in range(n):
        out[aa[i], bb[i]] += 1
    return out
