# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse monomial kernels.

Mirrors kernel_py statement for statement; coefficients stay generic
Python objects, the compilation removes interpreter overhead from the
tuple merges and dict accumulation loops.
"""


def mono_weight(tuple mono):
    cdef Py_ssize_t i, n = len(mono)
    cdef long w = 0
    for i in range(n):
        w += <long> (<tuple> mono[i])[1] + 1
    return w


cdef inline long _c_weight(tuple mono):
    cdef Py_ssize_t i, n = len(mono)
    cdef long w = 0
    for i in range(n):
        w += <long> (<tuple> mono[i])[1] + 1
    return w


cdef inline bint _factor_le(tuple f1, tuple f2):
    # (gen asc, order desc)
    if f1[0] < f2[0]:
        return True
    if f1[0] > f2[0]:
        return False
    return f1[1] >= f2[1]


def mono_mul(tuple m1, tuple m2):
    cdef Py_ssize_t n1 = len(m1), n2 = len(m2)
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef tuple f1, f2
    while i < n1 and j < n2:
        f1 = <tuple> m1[i]
        f2 = <tuple> m2[j]
        if _factor_le(f1, f2):
            out.append(f1)
            i += 1
        else:
            out.append(f2)
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


def mono_derive(tuple mono):
    cdef Py_ssize_t i, n = len(mono)
    cdef dict seen = {}
    cdef list bumped
    cdef tuple key, f
    for i in range(n):
        f = <tuple> mono[i]
        bumped = list(mono)
        bumped[i] = (f[0], <long> f[1] + 1)
        bumped.sort(key=_factor_key)
        key = tuple(bumped)
        seen[key] = seen.get(key, 0) + 1
    return list(seen.items())


def _factor_key(f):
    return (f[0], -f[1])


def lc_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object mono, c, acc, nc
    for mono, c in b.items():
        acc = out.get(mono)
        nc = c if acc is None else acc + c
        if nc:
            out[mono] = nc
        elif acc is not None:
            del out[mono]
    return out


def lc_scale(dict a, c):
    if not c or not a:
        return {}
    cdef dict out = {}
    cdef object mono, v
    for mono, v in a.items():
        out[mono] = c * v
    return out


def lc_mul(dict a, dict b, long wmax):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef list bw = []
    cdef object mono, c
    for mono, c in b.items():
        bw.append((mono, _c_weight(<tuple> mono), c))
    cdef dict out = {}
    cdef object m1, c1, c2, acc, nc
    cdef tuple entry, key
    cdef long w1, w2
    cdef Py_ssize_t k, nb = len(bw)
    for m1, c1 in a.items():
        w1 = _c_weight(<tuple> m1)
        for k in range(nb):
            entry = <tuple> bw[k]
            w2 = <long> entry[1]
            if w1 + w2 > wmax:
                continue
            key = mono_mul(<tuple> m1, <tuple> entry[0])
            nc = c1 * entry[2]
            acc = out.get(key)
            if acc is not None:
                nc = acc + nc
            if nc:
                out[key] = nc
            elif acc is not None:
                del out[key]
    return out


def lc_derive(dict a, long wmax):
    cdef dict out = {}
    cdef object mono, c, term, acc, nc, mult, key
    for mono, c in a.items():
        if _c_weight(<tuple> mono) + 1 > wmax:
            continue
        for key, mult in mono_derive(<tuple> mono):
            term = c * mult
            acc = out.get(key)
            nc = term if acc is None else acc + term
            if nc:
                out[key] = nc
            elif acc is not None:
                del out[key]
    return out
