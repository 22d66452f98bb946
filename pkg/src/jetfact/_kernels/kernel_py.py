"""Reference implementation of the sparse monomial kernels.

A monomial is a tuple of (generator, order) factors, sorted by generator
name ascending and then order descending.  A linear combination is a dict
mapping monomials to coefficients.  Coefficients are opaque ring elements:
the kernels only use +, *, unary truthiness, and integer scaling, so the
same code serves the exact scalar field.

kernel_cy.pyx mirrors this module statement for statement; keep the two in
sync (tests/test_kernels.py checks parity).
"""

__all__ = [
    "mono_weight",
    "mono_mul",
    "mono_derive",
    "lc_add",
    "lc_scale",
    "lc_mul",
    "lc_derive",
]


def mono_weight(mono):
    """Total weight of a monomial: each (g, m) factor contributes m + 1."""
    w = 0
    for _, m in mono:
        w += m + 1
    return w


def mono_mul(m1, m2):
    """Merge two sorted factor tuples into the sorted product monomial."""
    n1 = len(m1)
    n2 = len(m2)
    if not n1:
        return m2
    if not n2:
        return m1
    out = []
    i = 0
    j = 0
    while i < n1 and j < n2:
        f1 = m1[i]
        f2 = m2[j]
        if (f1[0], -f1[1]) <= (f2[0], -f2[1]):
            out.append(f1)
            i += 1
        else:
            out.append(f2)
            j += 1
    if i < n1:
        out.extend(m1[i:])
    if j < n2:
        out.extend(m2[j:])
    return tuple(out)


def mono_derive(mono):
    """Leibniz derivative of one monomial.

    Returns a list of (multiplicity, monomial) pairs, one per distinct
    bumped factor; multiplicities are positive ints.
    """
    n = len(mono)
    seen = {}
    for i in range(n):
        g, m = mono[i]
        bumped = list(mono)
        bumped[i] = (g, m + 1)
        bumped.sort(key=_factor_key)
        key = tuple(bumped)
        seen[key] = seen.get(key, 0) + 1
    return list(seen.items())


def _factor_key(f):
    return (f[0], -f[1])


def lc_add(a, b):
    """Sum of two linear combinations, zero terms pruned."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, c in b.items():
        acc = out.get(mono)
        nc = c if acc is None else acc + c
        if nc:
            out[mono] = nc
        elif acc is not None:
            del out[mono]
    return out


def lc_scale(a, c):
    """Scalar multiple of a linear combination."""
    if not c or not a:
        return {}
    return {mono: c * v for mono, v in a.items()}


def lc_mul(a, b, wmax):
    """Product of two linear combinations, discarding weights above wmax."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bw = [(mono, mono_weight(mono), c) for mono, c in b.items()]
    out = {}
    for m1, c1 in a.items():
        w1 = mono_weight(m1)
        for m2, w2, c2 in bw:
            if w1 + w2 > wmax:
                continue
            key = mono_mul(m1, m2)
            c = c1 * c2
            acc = out.get(key)
            nc = c if acc is None else acc + c
            if nc:
                out[key] = nc
            elif acc is not None:
                del out[key]
    return out


def lc_derive(a, wmax):
    """Leibniz derivative of a linear combination, truncated at wmax."""
    out = {}
    for mono, c in a.items():
        if mono_weight(mono) + 1 > wmax:
            continue
        for key, mult in mono_derive(mono):
            term = c * mult
            acc = out.get(key)
            nc = term if acc is None else acc + term
            if nc:
                out[key] = nc
            elif acc is not None:
                del out[key]
    return out
