# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""

from libc.stdint cimport uint32_t, uint64_t
from libc.stdlib cimport malloc, free
from cpython.bytearray cimport PyByteArray_FromStringAndSize


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int lowbit(uint64_t x) nogil:
    return __builtin_ctzll(x)


def path_end_table(int n, rows):
    if n > 24:
        raise ValueError("path table limited to 24 vertices")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef uint32_t *ends = <uint32_t *>malloc(size * sizeof(uint32_t))
    cdef uint32_t r[32]
    cdef Py_ssize_t mask
    cdef uint32_t e, free_, b
    cdef int v
    if ends == NULL:
        raise MemoryError()
    try:
        for v in range(n):
            r[v] = <uint32_t>rows[v]
        for mask in range(size):
            ends[mask] = 0
        for v in range(n):
            ends[(<Py_ssize_t>1) << v] = (<uint32_t>1) << v
        with nogil:
            for mask in range(1, size):
                e = ends[mask]
                while e:
                    v = lowbit(e)
                    e &= e - 1
                    free_ = r[v] & ~(<uint32_t>mask)
                    while free_:
                        b = free_ & (~free_ + 1)
                        free_ ^= b
                        ends[mask | b] |= b
        return [ends[mask] for mask in range(size)]
    finally:
        free(ends)


def rooted_path_table(int n, rows):
    if n > 24:
        raise ValueError("path table limited to 24 vertices")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef uint32_t *h = <uint32_t *>malloc(size * sizeof(uint32_t))
    cdef uint32_t r[32]
    cdef Py_ssize_t mask
    cdef uint32_t e, free_, b, low_s, above
    cdef int v
    if h == NULL:
        raise MemoryError()
    try:
        for v in range(n):
            r[v] = <uint32_t>rows[v]
        for mask in range(size):
            h[mask] = 0
        for v in range(n):
            h[(<Py_ssize_t>1) << v] = (<uint32_t>1) << v
        with nogil:
            for mask in range(1, size):
                e = h[mask]
                if e == 0:
                    continue
                low_s = (<uint32_t>mask) & (~(<uint32_t>mask) + 1)
                above = ~((low_s << 1) - 1)
                while e:
                    v = lowbit(e)
                    e &= e - 1
                    free_ = r[v] & ~(<uint32_t>mask) & above
                    while free_:
                        b = free_ & (~free_ + 1)
                        free_ ^= b
                        h[mask | b] |= b
        return [h[mask] for mask in range(size)]
    finally:
        free(h)


def cycle_flags(int n, rows, h):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t mask
    cdef int pc, s
    cdef uint32_t r[32]
    out = PyByteArray_FromStringAndSize(NULL, size)
    cdef unsigned char[:] flags = out
    for s in range(n):
        r[s] = <uint32_t>rows[s]
    for mask in range(size):
        pc = __builtin_popcountll(mask)
        if pc <= 1:
            flags[mask] = 1
            continue
        s = lowbit(mask)
        if pc == 2:
            flags[mask] = 1 if (r[s] & (<uint32_t>mask ^ ((<uint32_t>1) << s))) else 0
        else:
            flags[mask] = 1 if (<uint32_t>h[mask] & r[s]) else 0
    return out


def canonical_codes(int m, const uint64_t[::1] tab, int P, uint64_t lo, uint64_t hi, bint swap):
    cdef int nbytes = (m + 7) // 8
    cdef uint64_t full = ((<uint64_t>1) << m) - 1
    cdef uint64_t c, img, x
    cdef int p, j
    cdef bint ok
    out = []
    c = lo
    while c < hi:
        if swap and (full ^ c) < c:
            c += 1
            continue
        ok = True
        for p in range(P):
            img = 0
            x = c
            for j in range(nbytes):
                img |= tab[(p * nbytes + j) * 256 + (x & 255)]
                x >>= 8
            if img < c or (swap and (full ^ img) < c):
                ok = False
                break
        if ok:
            out.append(c)
        c += 1
    return out


cdef int _bb_n
cdef uint32_t _bb_cross[32]
cdef uint32_t _bb_red[32]
cdef int _bb_pen[32][4]
cdef int _bb_labels[32]
cdef int _bb_best_labels[32]
cdef int _bb_best
cdef bint _bb_found


cdef inline int _pair_cost(int u, int lu, int v, int lv) nogil:
    cdef bint blue
    if (lu >> 1) == (lv >> 1):
        return 1
    blue = not ((_bb_red[u] >> v) & 1)
    if blue == ((lu & 1) == (lv & 1)):
        return 0
    return 1


cdef void _bb_rec(int i, int cost) nogil:
    global _bb_best, _bb_found
    cdef int rest = 0, w, l, lw, c, k, mn, tmp
    cdef int order[4]
    if i == _bb_n:
        if cost < _bb_best:
            _bb_best = cost
            _bb_found = True
            for w in range(_bb_n):
                _bb_best_labels[w] = _bb_labels[w]
        return
    for w in range(i + 1, _bb_n):
        mn = _bb_pen[w][0]
        for lw in range(1, 4):
            if _bb_pen[w][lw] < mn:
                mn = _bb_pen[w][lw]
        rest += mn
    for l in range(4):
        order[l] = l
    # insertion sort by penalty, stable
    for l in range(1, 4):
        k = l
        while k > 0 and _bb_pen[i][order[k - 1]] > _bb_pen[i][order[k]]:
            tmp = order[k]
            order[k] = order[k - 1]
            order[k - 1] = tmp
            k -= 1
    for k in range(1 if i == 0 else 4):
        l = 0 if i == 0 else order[k]
        c = cost + _bb_pen[i][l]
        if c + rest >= _bb_best:
            continue
        _bb_labels[i] = l
        for w in range(i + 1, _bb_n):
            if (_bb_cross[i] >> w) & 1:
                for lw in range(4):
                    _bb_pen[w][lw] += _pair_cost(i, l, w, lw)
        _bb_rec(i + 1, c)
        for w in range(i + 1, _bb_n):
            if (_bb_cross[i] >> w) & 1:
                for lw in range(4):
                    _bb_pen[w][lw] -= _pair_cost(i, l, w, lw)


def split_bb(int n, cross, red, int ub):
    global _bb_n, _bb_best, _bb_found
    cdef int v, l
    if n > 32:
        raise ValueError("branch and bound limited to 32 vertices")
    _bb_n = n
    _bb_best = ub
    _bb_found = False
    for v in range(n):
        _bb_cross[v] = <uint32_t>cross[v]
        _bb_red[v] = <uint32_t>red[v]
        _bb_labels[v] = 0
        for l in range(4):
            _bb_pen[v][l] = 0
    with nogil:
        _bb_rec(0, 0)
    if not _bb_found:
        return _bb_best, None
    return _bb_best, [_bb_best_labels[v] for v in range(n)]
