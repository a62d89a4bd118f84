"""Pure-Python sparse polynomial term kernel.

A "term dict" maps exponent tuples (one entry per variable) to exact
coefficients (int or Fraction).  Zero coefficients are never stored.
The compiled twin lives in ``_kernel_c.pyx``; both expose the same
functions and must stay behaviourally identical.
"""

from operator import add as _add

IMPL = "pure"


def mul(a, b):
    """Product of two term dicts over the same variable list."""
    out = {}
    if not a or not b:
        return out
    if len(b) > len(a):
        a, b = b, a
    for eb, cb in b.items():
        for ea, ca in a.items():
            ec = tuple(map(_add, ea, eb))
            c = out.get(ec)
            if c is None:
                out[ec] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[ec] = c
                else:
                    del out[ec]
    return out


def add_into(dst, src, scale=1):
    """In-place dst += scale*src; returns dst with zeros dropped.

    dst and src must be distinct dicts.
    """
    if not src or scale == 0:
        return dst
    if scale == 1:
        for e, c0 in src.items():
            c = dst.get(e)
            if c is None:
                dst[e] = c0
            else:
                c = c + c0
                if c:
                    dst[e] = c
                else:
                    del dst[e]
    else:
        for e, c0 in src.items():
            c = dst.get(e)
            if c is None:
                dst[e] = scale * c0
            else:
                c = c + scale * c0
                if c:
                    dst[e] = c
                else:
                    del dst[e]
    return dst


def mul_monomial(a, expo, coeff):
    """a * coeff*x^expo as a fresh dict; coeff must be nonzero."""
    out = {}
    if not coeff:
        return out
    for e, c in a.items():
        out[tuple(map(_add, e, expo))] = c * coeff
    return out


def scaled(a, scale):
    """scale*a as a fresh dict."""
    if not scale:
        return {}
    return {e: scale * c for e, c in a.items()}


def power(a, k, nvars):
    """a**k by binary powering; k >= 0."""
    result = {(0,) * nvars: 1}
    if k == 0:
        return result
    base = a
    while True:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if not k:
            return result
        base = mul(base, base)
