# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled property kernels; same contract as ``_kernels_py``.

Properties are unpacked into arrays of 64-bit words. Points below 6 move
teams inside a word with masked shifts, higher points move whole words.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t, int64_t

BACKEND = "cython"

# bit t set iff bit i of t is set, for i < 6
cdef uint64_t[6] WITH = [
    0xAAAAAAAAAAAAAAAAULL,
    0xCCCCCCCCCCCCCCCCULL,
    0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL,
    0xFFFF0000FFFF0000ULL,
    0xFFFFFFFF00000000ULL,
]


cdef inline Py_ssize_t _words(Py_ssize_t T) noexcept nogil:
    return (T + 63) >> 6


cdef uint64_t* _unpack(object P, Py_ssize_t T) except NULL:
    cdef Py_ssize_t nw = _words(T)
    cdef bytes raw = (<object>P).to_bytes(nw * 8, "little")
    cdef uint64_t* out = <uint64_t*>malloc(nw * sizeof(uint64_t))
    if out == NULL:
        raise MemoryError()
    memcpy(out, <const char*>raw, nw * 8)
    return out


cdef object _pack(uint64_t* a, Py_ssize_t T):
    cdef Py_ssize_t nw = _words(T)
    return int.from_bytes((<char*>a)[: nw * 8], "little")


cdef void _down(uint64_t* a, Py_ssize_t nw, int m) noexcept nogil:
    cdef Py_ssize_t j, off
    cdef int i, s
    for i in range(m):
        if i < 6:
            s = 1 << i
            for j in range(nw):
                a[j] |= (a[j] & WITH[i]) >> s
        else:
            off = (<Py_ssize_t>1) << (i - 6)
            for j in range(nw):
                if j & off:
                    a[j ^ off] |= a[j]


cdef void _up(uint64_t* a, Py_ssize_t nw, int m) noexcept nogil:
    cdef Py_ssize_t j, off
    cdef int i, s
    for i in range(m):
        if i < 6:
            s = 1 << i
            for j in range(nw):
                a[j] |= (a[j] & ~WITH[i]) << s
        else:
            off = (<Py_ssize_t>1) << (i - 6)
            for j in range(nw):
                if j & off:
                    a[j] |= a[j ^ off]


def down_closure(object P, int m):
    """All subteams of members of P."""
    cdef Py_ssize_t T = (<Py_ssize_t>1) << m
    cdef uint64_t* a = _unpack(P, T)
    try:
        with nogil:
            _down(a, _words(T), m)
        return _pack(a, T)
    finally:
        free(a)


def up_closure(object P, int m):
    """All superteams of members of P."""
    cdef Py_ssize_t T = (<Py_ssize_t>1) << m
    cdef uint64_t* a = _unpack(P, T)
    try:
        with nogil:
            _up(a, _words(T), m)
        return _pack(a, T)
    finally:
        free(a)


cdef void _union_with(uint64_t* out, const uint64_t* q, uint64_t* b, Py_ssize_t nw, Py_ssize_t team) noexcept nogil:
    """out |= {s | team : s in q}, using b as scratch."""
    cdef Py_ssize_t j, off
    cdef int i = 0, s
    memcpy(b, q, nw * sizeof(uint64_t))
    while team:
        if team & 1:
            if i < 6:
                s = 1 << i
                for j in range(nw):
                    b[j] = ((b[j] & ~WITH[i]) << s) | (b[j] & WITH[i])
            else:
                off = (<Py_ssize_t>1) << (i - 6)
                for j in range(nw):
                    if j & off:
                        b[j] |= b[j ^ off]
                        b[j ^ off] = 0
        team >>= 1
        i += 1
    for j in range(nw):
        out[j] |= b[j]


cdef void _zeta(int64_t* f, Py_ssize_t T, int m, int sign) noexcept nogil:
    cdef Py_ssize_t t, bit
    cdef int i
    for i in range(m):
        bit = (<Py_ssize_t>1) << i
        for t in range(T):
            if t & bit:
                f[t] += sign * f[t ^ bit]


cdef void _split_dense(const uint64_t* a, const uint64_t* b, uint64_t* out, Py_ssize_t T, int m, int64_t* f, int64_t* g) noexcept nogil:
    """OR-convolution of the indicator vectors."""
    cdef Py_ssize_t t
    for t in range(T):
        f[t] = (a[t >> 6] >> (t & 63)) & 1
        g[t] = (b[t >> 6] >> (t & 63)) & 1
    _zeta(f, T, m, 1)
    _zeta(g, T, m, 1)
    for t in range(T):
        f[t] = f[t] * g[t]
    _zeta(f, T, m, -1)
    for t in range(_words(T)):
        out[t] = 0
    for t in range(T):
        if f[t]:
            out[t >> 6] |= (<uint64_t>1) << (t & 63)


def split_or(object P, object Q, int m):
    """The property {s | u : s in P, u in Q}."""
    if P.bit_count() > Q.bit_count():
        P, Q = Q, P
    cdef Py_ssize_t T = (<Py_ssize_t>1) << m
    cdef Py_ssize_t nw = _words(T)
    cdef Py_ssize_t members = P.bit_count()
    cdef uint64_t* a = _unpack(P, T)
    cdef uint64_t* q = NULL
    cdef uint64_t* b = NULL
    cdef uint64_t* out = NULL
    cdef int64_t* f = NULL
    cdef int64_t* g = NULL
    cdef Py_ssize_t j, t
    cdef uint64_t w
    try:
        q = _unpack(Q, T)
        out = <uint64_t*>calloc(nw, sizeof(uint64_t))
        if out == NULL:
            raise MemoryError()
        if members * nw <= 2 * T:
            b = <uint64_t*>malloc(nw * sizeof(uint64_t))
            if b == NULL:
                raise MemoryError()
            with nogil:
                for j in range(nw):
                    w = a[j]
                    while w:
                        t = (j << 6) | __builtin_ctzll(w)
                        _union_with(out, q, b, nw, t)
                        w &= w - 1
        else:
            f = <int64_t*>malloc(T * sizeof(int64_t))
            g = <int64_t*>malloc(T * sizeof(int64_t))
            if f == NULL or g == NULL:
                raise MemoryError()
            with nogil:
                _split_dense(a, q, out, T, m, f, g)
        return _pack(out, T)
    finally:
        free(a)
        free(q)
        free(b)
        free(out)
        free(f)
        free(g)


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
