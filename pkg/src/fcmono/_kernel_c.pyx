# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient-vector kernel (int64 with overflow guards).

Mirrors ``_kernel_py``.  Every entry point converts its list arguments
to C buffers; values that do not fit in 62 bits raise OverflowError so
the caller can retry with the pure-Python big-int kernel.
"""

from libc.stdlib cimport malloc, free

cdef long long LIMIT = (<long long> 1) << 62


cdef long long* to_buf(list vec, Py_ssize_t n, long long* out_max) except NULL:
    cdef long long* buf = <long long*> malloc(n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t k
    cdef long long v, m = 0
    try:
        for k in range(n):
            v = vec[k]          # raises OverflowError on huge ints
            buf[k] = v
            if v < 0:
                v = -v
            if v > m:
                m = v
    except BaseException:
        free(buf)
        raise
    out_max[0] = m
    return buf


cdef void write_back(list vec, long long* buf, Py_ssize_t n):
    cdef Py_ssize_t k
    for k in range(n):
        vec[k] = buf[k]


def shift_scaled_add(list acc, list src, long long shift, long long num):
    cdef Py_ssize_t n = len(src)
    if num == 0:
        return
    if len(acc) != n:
        raise ValueError("length mismatch")
    cdef long long ma = 0, mb = 0
    cdef long long* a = to_buf(acc, n, &mb)
    cdef long long* s = NULL
    cdef Py_ssize_t k, j
    cdef long long an = num if num >= 0 else -num
    try:
        s = to_buf(src, n, &ma)
        if an != 0 and ma > (LIMIT - mb) / an:
            raise OverflowError("int64 kernel bound exceeded")
        shift %= n
        if shift < 0:
            shift += n
        j = shift
        for k in range(n - shift):
            a[j] += s[k] * num
            j += 1
        j = 0
        for k in range(n - shift, n):
            a[j] += s[k] * num
            j += 1
        write_back(acc, a, n)
    finally:
        free(a)
        if s != NULL:
            free(s)


def add_scaled(list acc, list src, long long num):
    shift_scaled_add(acc, src, 0, num)


def scale_inplace(list vec, long long num):
    cdef Py_ssize_t n = len(vec)
    cdef long long m = 0
    cdef long long* buf = to_buf(vec, n, &m)
    cdef long long an = num if num >= 0 else -num
    cdef Py_ssize_t k
    try:
        if an != 0 and m != 0 and an > LIMIT / m:
            raise OverflowError("int64 kernel bound exceeded")
        for k in range(n):
            buf[k] *= num
        write_back(vec, buf, n)
    finally:
        free(buf)


def convolve_into(list acc, list a, list b):
    cdef Py_ssize_t n = len(a)
    if len(b) != n or len(acc) != n:
        raise ValueError("length mismatch")
    cdef long long ma = 0, mb = 0, mc = 0
    cdef long long* pa = NULL
    cdef long long* pb = NULL
    cdef long long* pc = NULL
    cdef Py_ssize_t k, j, t, nnza = 0, nnzb = 0
    cdef long long c
    pa = to_buf(a, n, &ma)
    try:
        pb = to_buf(b, n, &mb)
        pc = to_buf(acc, n, &mc)
        for k in range(n):
            if pa[k] != 0:
                nnza += 1
            if pb[k] != 0:
                nnzb += 1
        if nnzb < nnza:
            pa, pb = pb, pa
            ma, mb = mb, ma
            nnza, nnzb = nnzb, nnza
        if ma != 0 and mb != 0:
            if mb > (LIMIT - mc) / ma / (nnza if nnza else 1):
                raise OverflowError("int64 kernel bound exceeded")
        for k in range(n):
            c = pa[k]
            if c != 0:
                for j in range(n):
                    if pb[j] != 0:
                        t = k + j
                        if t >= n:
                            t -= n
                        pc[t] += c * pb[j]
        write_back(acc, pc, n)
    finally:
        free(pa)
        if pb != NULL:
            free(pb)
        if pc != NULL:
            free(pc)


def negate_exponents(list vec):
    cdef Py_ssize_t n = len(vec)
    cdef list out = [0] * n
    out[0] = vec[0]
    cdef Py_ssize_t k
    for k in range(1, n):
        out[n - k] = vec[k]
    return out


def lift(list vec, Py_ssize_t factor):
    cdef Py_ssize_t n = len(vec)
    cdef list out = [0] * (n * factor)
    cdef Py_ssize_t k
    for k in range(n):
        if vec[k] != 0:
            out[k * factor] = vec[k]
    return out


def compress(list vec, Py_ssize_t g):
    cdef Py_ssize_t n = len(vec)
    cdef list out = [0] * (n // g)
    cdef Py_ssize_t k
    for k in range(n):
        if vec[k] != 0:
            out[k // g] = vec[k]
    return out


def reduce_axes(list vec, tuple axes):
    cdef Py_ssize_t n = len(vec)
    cdef long long m = 0
    cdef long long* buf = to_buf(vec, n, &m)
    cdef Py_ssize_t pa, k, t
    cdef long long c
    cdef tuple ax
    try:
        # worst-case growth over all axes is bounded by prod(p) <= 4096-ish
        if m > (LIMIT >> 13):
            raise OverflowError("int64 kernel bound exceeded")
        for ax in axes:
            pa = ax[0]
            for mm in ax[1]:
                for k in range(<Py_ssize_t> mm, n, pa):
                    c = buf[k]
                    if c != 0:
                        buf[k] = 0
                        for d in ax[2]:
                            t = k + <Py_ssize_t> d
                            if t >= n:
                                t -= n
                            buf[t] -= c
        write_back(vec, buf, n)
    finally:
        free(buf)


def maxabs(list vec):
    cdef Py_ssize_t n = len(vec)
    cdef long long m = 0, v
    cdef Py_ssize_t k
    for k in range(n):
        v = vec[k]
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m
