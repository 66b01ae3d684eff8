# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_fallback.py``; keep results identical."""

import numpy as np
from libc.math cimport exp
from libc.stdlib cimport malloc, free, realloc

BACKEND = "cython"

DEF INTERIOR = 0
DEF FACET = 1
DEF TWO_SKELETON = 2
DEF DIVERGENT = 3
DEF UNDETERMINED = 4

ctypedef long long i64

cdef struct Node:
    i64 c[4]
    int last


cdef class _Stack:
    cdef Node* data
    cdef Py_ssize_t size, cap

    def __cinit__(self):
        self.cap = 1024
        self.size = 0
        self.data = <Node*> malloc(self.cap * sizeof(Node))
        if self.data == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.data)

    cdef int push(self, i64 c0, i64 c1, i64 c2, i64 c3, int last) except -1:
        cdef Node* grown
        if self.size == self.cap:
            grown = <Node*> realloc(self.data, 2 * self.cap * sizeof(Node))
            if grown == NULL:
                raise MemoryError()
            self.data = grown
            self.cap *= 2
        self.data[self.size].c[0] = c0
        self.data[self.size].c[1] = c1
        self.data[self.size].c[2] = c2
        self.data[self.size].c[3] = c3
        self.data[self.size].last = last
        self.size += 1
        return 0


def census_maxima(base, bound):
    cdef i64 X = bound
    cdef _Stack st = _Stack()
    cdef Node nd
    cdef i64 t, s, cj, v
    cdef int j
    out = []
    cdef Py_ssize_t n_out = 0, cap_out = 4096
    cdef i64[::1] buf = np.empty(cap_out, dtype=np.int64)
    st.push(base[0], base[1], base[2], base[3], -1)
    while st.size:
        st.size -= 1
        nd = st.data[st.size]
        t = nd.c[0] + nd.c[1] + nd.c[2] + nd.c[3]
        for j in range(4):
            if j == nd.last:
                continue
            cj = nd.c[j]
            s = t - cj
            if cj >= s:
                continue
            v = 2 * s - cj
            if v < X:
                if n_out == cap_out:
                    out.append(np.asarray(buf).copy())
                    n_out = 0
                buf[n_out] = v
                n_out += 1
                if j == 0:
                    st.push(v, nd.c[1], nd.c[2], nd.c[3], 0)
                elif j == 1:
                    st.push(nd.c[0], v, nd.c[2], nd.c[3], 1)
                elif j == 2:
                    st.push(nd.c[0], nd.c[1], v, nd.c[3], 2)
                else:
                    st.push(nd.c[0], nd.c[1], nd.c[2], v, 3)
    out.append(np.asarray(buf)[:n_out].copy())
    return np.concatenate(out).astype(np.int64)


def orbit_exp_sum(base, s, max_height):
    cdef double s0 = s[0], s1 = s[1], s2 = s[2], s3 = s[3]
    cdef i64 H = max_height
    cdef _Stack st = _Stack()
    cdef Node nd
    cdef i64 t, sj, cj, ht
    cdef i64 ch[4]
    cdef int j, k
    cdef double total
    cdef Py_ssize_t count
    cdef i64 b0 = base[0], b1 = base[1], b2 = base[2], b3 = base[3]
    if b0 + b1 + b2 + b3 > H:
        return 0.0, 0
    total = exp(-(b0 * s0 + b1 * s1 + b2 * s2 + b3 * s3))
    count = 1
    st.push(b0, b1, b2, b3, -1)
    while st.size:
        st.size -= 1
        nd = st.data[st.size]
        t = nd.c[0] + nd.c[1] + nd.c[2] + nd.c[3]
        for j in range(4):
            if j == nd.last:
                continue
            cj = nd.c[j]
            sj = t - cj
            if cj >= sj:
                continue
            ht = t + 2 * (sj - cj)
            if ht > H:
                continue
            for k in range(4):
                ch[k] = nd.c[k]
            ch[j] = 2 * sj - cj
            total += exp(-(ch[0] * s0 + ch[1] * s1 + ch[2] * s2 + ch[3] * s3))
            count += 1
            st.push(ch[0], ch[1], ch[2], ch[3], j)
    return total, count


cdef inline int _classify_i64(i64* p, int max_iters, int* iters) nogil:
    cdef int it, j, k, neg, zero
    cdef i64 sk
    for it in range(max_iters + 1):
        iters[0] = it
        if p[0] + p[1] + p[2] + p[3] < 0:
            return DIVERGENT
        neg = 0
        zero = 0
        k = -1
        for j in range(4):
            if p[j] < 0:
                neg += 1
                k = j
            elif p[j] == 0:
                zero += 1
        if neg >= 2 or (neg == 1 and zero >= 1):
            return DIVERGENT
        if neg == 0:
            if zero >= 2:
                return TWO_SKELETON
            return FACET if zero == 1 else INTERIOR
        if it == max_iters:
            break
        sk = p[k]
        for j in range(4):
            if j == k:
                p[j] = -sk
            else:
                p[j] = p[j] + 2 * sk
    iters[0] = max_iters
    return UNDETERMINED


cdef inline int _classify_f64(double* p, int max_iters, int* iters) nogil:
    cdef int it, j, k, neg, zero
    cdef double sk
    for it in range(max_iters + 1):
        iters[0] = it
        if p[0] + p[1] + p[2] + p[3] < 0:
            return DIVERGENT
        neg = 0
        zero = 0
        k = -1
        for j in range(4):
            if p[j] < 0:
                neg += 1
                k = j
            elif p[j] == 0:
                zero += 1
        if neg >= 2 or (neg == 1 and zero >= 1):
            return DIVERGENT
        if neg == 0:
            if zero >= 2:
                return TWO_SKELETON
            return FACET if zero == 1 else INTERIOR
        if it == max_iters:
            break
        sk = p[k]
        for j in range(4):
            if j == k:
                p[j] = -sk
            else:
                p[j] = p[j] + 2 * sk
    iters[0] = max_iters
    return UNDETERMINED


def classify_batch(points, int max_iters):
    pts = np.asarray(points)
    cdef Py_ssize_t n = pts.shape[0], r
    labels = np.empty(n, dtype=np.int8)
    iters = np.empty(n, dtype=np.int32)
    cdef signed char[::1] lab = labels
    cdef int[::1] itv = iters
    cdef i64[:, ::1] fi
    cdef double[:, ::1] ff
    cdef int it
    if pts.dtype.kind == "i":
        final = np.ascontiguousarray(pts, dtype=np.int64).copy()
        fi = final
        with nogil:
            for r in range(n):
                lab[r] = _classify_i64(&fi[r, 0], max_iters, &it)
                itv[r] = it
    else:
        final = np.ascontiguousarray(pts, dtype=np.float64).copy()
        ff = final
        with nogil:
            for r in range(n):
                lab[r] = _classify_f64(&ff[r, 0], max_iters, &it)
                itv[r] = it
    return labels, iters, final
