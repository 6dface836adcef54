"""Pure-Python term-map kernels (fallback for the compiled extension).

A term map is a dict sending exponent tuples (ints, fixed length) to
nonzero coefficients (int or Fraction).  ``p`` is an optional prime
modulus for prime-field coefficients; coefficients are then kept in
``range(p)``.
"""


def term_add(a, b, p=None):
    out = dict(a)
    for g, c in b.items():
        s = out.get(g, 0) + c
        if p is not None:
            s %= p
        if s:
            out[g] = s
        else:
            out.pop(g, None)
    return out


def term_mul(a, b, p=None):
    out = {}
    for ga, ca in a.items():
        for gb, cb in b.items():
            g = tuple(x + y for x, y in zip(ga, gb))
            s = out.get(g, 0) + ca * cb
            if p is not None:
                s %= p
            if s:
                out[g] = s
            else:
                out.pop(g, None)
    return out


def term_scale(a, c, p=None):
    if p is not None:
        c %= p
    if not c:
        return {}
    out = {}
    for g, ca in a.items():
        s = ca * c
        if p is not None:
            s %= p
        if s:
            out[g] = s
    return out
