# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-map kernels; semantics identical to _kernels_py."""


cdef inline tuple _tuple_add(tuple ga, tuple gb):
    cdef Py_ssize_t i, n = len(ga)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = ga[i] + gb[i]
    return tuple(out)


cpdef dict term_add(dict a, dict b, object p=None):
    cdef dict out = dict(a)
    for g, c in b.items():
        s = out.get(g, 0) + c
        if p is not None:
            s %= p
        if s:
            out[g] = s
        else:
            out.pop(g, None)
    return out


cpdef dict term_mul(dict a, dict b, object p=None):
    cdef dict out = {}
    cdef tuple g
    for ga, ca in a.items():
        for gb, cb in b.items():
            g = _tuple_add(<tuple> ga, <tuple> gb)
            s = out.get(g, 0) + ca * cb
            if p is not None:
                s %= p
            if s:
                out[g] = s
            else:
                out.pop(g, None)
    return out


cpdef dict term_scale(dict a, object c, object p=None):
    cdef dict out = {}
    if p is not None:
        c %= p
    if not c:
        return out
    for g, ca in a.items():
        s = ca * c
        if p is not None:
            s %= p
        if s:
            out[g] = s
    return out
