# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exhaustive finite-ring dynamics.

Mirrors padicdyn._core_py; all moduli fit in int64 (the enumeration
budget keeps p^M below 2^24, so products stay below 2^48).
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memset


cdef inline void urow_mul(long long* a, long long* b, long long* conv,
                          long long f, long long pmQ, long long* ured) nogil:
    cdef long long i, j, k, ck
    if f == 1:
        conv[0] = (a[0] * b[0]) % pmQ
        return
    for i in range(2 * f - 1):
        conv[i] = 0
    for i in range(f):
        if a[i] != 0:
            for j in range(f):
                conv[i + j] = (conv[i + j] + a[i] * b[j]) % pmQ
    for k in range(2 * f - 2, f - 1, -1):
        ck = conv[k]
        if ck != 0:
            for j in range(f):
                if ured[j] != 0:
                    conv[k - f + j] = (conv[k - f + j] + ck * ured[j]) % pmQ


cdef inline bint row_nonzero(long long* r, long long f) nogil:
    cdef long long j
    for j in range(f):
        if r[j] != 0:
            return 1
    return 0


cdef void ring_mul(long long* a, long long* b, long long* out,
                   long long f, long long e, long long pmQ,
                   long long* ured, long long* ered,
                   long long* rows, long long* conv) nogil:
    cdef long long i1, i2, i, j, k
    if e == 1:
        urow_mul(a, b, conv, f, pmQ, ured)
        for j in range(f):
            out[j] = conv[j]
        return
    memset(rows, 0, (2 * e - 1) * f * sizeof(long long))
    for i1 in range(e):
        if not row_nonzero(a + i1 * f, f):
            continue
        for i2 in range(e):
            if not row_nonzero(b + i2 * f, f):
                continue
            urow_mul(a + i1 * f, b + i2 * f, conv, f, pmQ, ured)
            for j in range(f):
                rows[(i1 + i2) * f + j] = (rows[(i1 + i2) * f + j] + conv[j]) % pmQ
    for k in range(2 * e - 2, e - 1, -1):
        if not row_nonzero(rows + k * f, f):
            continue
        for i in range(e):
            if row_nonzero(ered + i * f, f):
                urow_mul(rows + k * f, ered + i * f, conv, f, pmQ, ured)
                for j in range(f):
                    rows[(k - e + i) * f + j] = (rows[(k - e + i) * f + j] + conv[j]) % pmQ
    for i in range(e):
        for j in range(f):
            out[i * f + j] = rows[i * f + j] % pmQ


def eval_table(long long p, long long f, long long e, long long pmQ,
               long long[::1] mods, long long[::1] ured, long long[::1] ered,
               long long[::1] poly, long long deg, long long size,
               long long[::1] out):
    """out[i] = packed index of phi(x_i) for every element of O_F/pi^M."""
    cdef long long ef = e * f
    cdef long long idx, k, i, j, d, ci, stride, pk, t
    cdef long long* x = <long long*> calloc(ef, sizeof(long long))
    cdef long long* acc = <long long*> calloc(ef, sizeof(long long))
    cdef long long* tmp = <long long*> calloc(ef, sizeof(long long))
    cdef long long* conv = <long long*> calloc(2 * f - 1 if f > 1 else 1, sizeof(long long))
    cdef long long* rows = <long long*> calloc((2 * e - 1) * f, sizeof(long long))
    if not (x and acc and tmp and conv and rows):
        free(x); free(acc); free(tmp); free(conv); free(rows)
        raise MemoryError()
    with nogil:
        for idx in range(size):
            k = idx
            for i in range(e):
                for j in range(f):
                    d = k % mods[i]
                    k = k // mods[i]
                    x[i * f + j] = d
            for t in range(ef):
                acc[t] = poly[deg * ef + t] % pmQ
            for ci in range(deg - 1, -1, -1):
                ring_mul(acc, x, tmp, f, e, pmQ, &ured[0], &ered[0], rows, conv)
                for t in range(ef):
                    acc[t] = (tmp[t] + poly[ci * ef + t]) % pmQ
            pk = 0
            stride = 1
            for i in range(e):
                for j in range(f):
                    pk += (acc[i * f + j] % mods[i]) * stride
                    stride *= mods[i]
            out[idx] = pk
    free(x); free(acc); free(tmp); free(conv); free(rows)
    return out


def census(long long[::1] table, long long size,
           long long[::1] tails, long long[::1] cyclens):
    """Rho-shape decomposition of a functional graph given as a successor table."""
    cdef long long s, x, i, n, cstart, clen, bt, bc, node, plen
    cdef char* color = <char*> calloc(size, sizeof(char))
    cdef long long* pos = <long long*> calloc(size, sizeof(long long))
    cdef long long* path = <long long*> calloc(size, sizeof(long long))
    if not (color and pos and path):
        free(color); free(pos); free(path)
        raise MemoryError()
    with nogil:
        for s in range(size):
            if color[s]:
                continue
            plen = 0
            x = s
            while color[x] == 0:
                color[x] = 1
                pos[x] = plen
                path[plen] = x
                plen += 1
                x = table[x]
            if color[x] == 1:
                cstart = pos[x]
                clen = plen - cstart
                for i in range(cstart, plen):
                    node = path[i]
                    tails[node] = 0
                    cyclens[node] = clen
                    color[node] = 2
                for i in range(cstart - 1, -1, -1):
                    node = path[i]
                    tails[node] = cstart - i
                    cyclens[node] = clen
                    color[node] = 2
            else:
                bt = tails[x]
                bc = cyclens[x]
                n = plen
                for i in range(n - 1, -1, -1):
                    node = path[i]
                    tails[node] = bt + (n - i)
                    cyclens[node] = bc
                    color[node] = 2
    free(color); free(pos); free(path)
    return tails, cyclens
