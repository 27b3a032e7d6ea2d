# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C versions of the bounded search loops (int64 only).

Callers in ``kernels`` guarantee every magnitude stays far below 2**62.
"""
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy, memcmp

ctypedef long long i64


cdef struct Ctx:
    Py_ssize_t n
    Py_ssize_t d
    i64 *gens       # n * d
    i64 *w          # n
    i64 *coeffs     # n
    i64 *rems       # (n + 1) * d, one scratch row per level
    # failure memo: open addressing over keys (level, cap, rem...)
    Py_ssize_t width
    Py_ssize_t slots
    Py_ssize_t used
    i64 *keys
    char *full


cdef unsigned long long hash_key(i64 *key, Py_ssize_t width):
    cdef unsigned long long h = 1469598103934665603ULL
    cdef Py_ssize_t k
    for k in range(width):
        h ^= <unsigned long long>key[k]
        h *= 1099511628211ULL
        h ^= h >> 29
    return h


cdef int grow(Ctx *s) except -1:
    cdef Py_ssize_t old = s.slots, k, j
    cdef i64 *okeys = s.keys
    cdef char *ofull = s.full
    s.slots = old * 2
    s.keys = <i64 *>malloc(s.slots * s.width * sizeof(i64))
    s.full = <char *>calloc(s.slots, 1)
    if s.keys == NULL or s.full == NULL:
        raise MemoryError()
    for k in range(old):
        if ofull[k]:
            j = hash_key(okeys + k * s.width, s.width) & (s.slots - 1)
            while s.full[j]:
                j = (j + 1) & (s.slots - 1)
            s.full[j] = 1
            memcpy(s.keys + j * s.width, okeys + k * s.width, s.width * sizeof(i64))
    free(okeys)
    free(ofull)
    return 0


cdef Py_ssize_t probe(Ctx *s, i64 *key):
    cdef Py_ssize_t j = hash_key(key, s.width) & (s.slots - 1)
    while s.full[j]:
        if memcmp(s.keys + j * s.width, key, s.width * sizeof(i64)) == 0:
            return j
        j = (j + 1) & (s.slots - 1)
    return -1 - j


cdef int remember(Ctx *s, i64 *key) except -1:
    cdef Py_ssize_t j
    if 2 * (s.used + 1) > s.slots:
        grow(s)
    j = probe(s, key)
    if j < 0:
        j = -1 - j
        s.full[j] = 1
        memcpy(s.keys + j * s.width, key, s.width * sizeof(i64))
        s.used += 1
    return 0


cdef bint last_level(Ctx *s, i64 *rem, i64 cap):
    cdef Py_ssize_t n = s.n, d = s.d, k, j = -1
    cdef i64 *g = s.gens + (n - 1) * d
    cdef i64 c
    for k in range(d):
        if g[k] != 0:
            j = k
            break
    if rem[j] % g[j] != 0:
        return False
    c = rem[j] // g[j]
    if c < 0 or c * s.w[n - 1] > cap:
        return False
    for k in range(d):
        if rem[k] != c * g[k]:
            return False
    s.coeffs[n - 1] = c
    return True


cdef int rec(Ctx *s, Py_ssize_t i, i64 cap, i64 *key) except -1:
    """1 if found, 0 if not."""
    cdef Py_ssize_t d = s.d, k
    cdef i64 *rem = s.rems + i * d
    cdef i64 *nxt = s.rems + (i + 1) * d
    cdef i64 *g
    cdef i64 c, cmax, wi
    cdef int r
    if i == s.n - 1:
        return 1 if last_level(s, rem, cap) else 0
    key[0] = i
    key[1] = cap
    memcpy(key + 2, rem, d * sizeof(i64))
    if probe(s, key) >= 0:
        return 0
    g = s.gens + i * d
    wi = s.w[i]
    cmax = cap // wi
    memcpy(nxt, rem, d * sizeof(i64))
    c = 0
    while c <= cmax:
        s.coeffs[i] = c
        r = rec(s, i + 1, cap - c * wi, key)
        if r:
            return 1
        for k in range(d):
            nxt[k] -= g[k]
        c += 1
    s.coeffs[i] = 0
    key[0] = i
    key[1] = cap
    memcpy(key + 2, rem, d * sizeof(i64))
    remember(s, key)
    return 0


def lex_search(gens, weights, target, long long cap):
    """See ``_pykernels.lex_search``."""
    cdef Ctx s
    cdef Py_ssize_t n = len(gens), d = len(target), i, k
    cdef i64 *key
    cdef int found
    if cap < 0:
        return None
    if n == 0:
        return () if not any(target) else None
    s.n = n
    s.d = d
    s.width = d + 2
    s.slots = 1024
    s.used = 0
    s.gens = <i64 *>malloc(n * d * sizeof(i64) + 1)
    s.w = <i64 *>malloc(n * sizeof(i64))
    s.coeffs = <i64 *>calloc(n, sizeof(i64))
    s.rems = <i64 *>malloc((n + 1) * d * sizeof(i64) + 1)
    s.keys = <i64 *>malloc(s.slots * s.width * sizeof(i64))
    s.full = <char *>calloc(s.slots, 1)
    key = <i64 *>malloc(s.width * sizeof(i64))
    try:
        if (s.gens == NULL or s.w == NULL or s.coeffs == NULL or s.rems == NULL
                or s.keys == NULL or s.full == NULL or key == NULL):
            raise MemoryError()
        for i in range(n):
            s.w[i] = weights[i]
            g = gens[i]
            for k in range(d):
                s.gens[i * d + k] = g[k]
        for k in range(d):
            s.rems[k] = target[k]
        found = rec(&s, 0, cap, key)
        if not found:
            return None
        return tuple([s.coeffs[i] for i in range(n)])
    finally:
        free(s.gens)
        free(s.w)
        free(s.coeffs)
        free(s.rems)
        free(s.keys)
        free(s.full)
        free(key)


def numerical_sieve(gens, Py_ssize_t limit):
    """See ``_pykernels.numerical_sieve``."""
    cdef bytearray out
    cdef unsigned char *m
    cdef Py_ssize_t g, k
    if limit < 0:
        return bytearray()
    out = bytearray(limit + 1)
    m = out
    m[0] = 1
    for gg in gens:
        g = gg
        if g <= 0 or g > limit:
            continue
        for k in range(g, limit + 1):
            if m[k - g]:
                m[k] = 1
    return out
