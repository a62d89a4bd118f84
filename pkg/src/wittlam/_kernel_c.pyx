# cython: language_level=3
"""Compiled sparse polynomial term kernel.

Behavioural twin of ``_kernel_py``; see there for the data layout.
Exponent tuples are combined with C-level tuple construction and dicts
are walked via the C API; coefficient arithmetic stays on Python objects
so arbitrary-precision ints and Fractions work unchanged.
"""

from cpython.dict cimport (PyDict_DelItem, PyDict_GetItem, PyDict_Next,
                           PyDict_SetItem)
from cpython.object cimport PyObject
from cpython.ref cimport Py_INCREF
from cpython.tuple cimport (PyTuple_GET_ITEM, PyTuple_GET_SIZE, PyTuple_New,
                            PyTuple_SET_ITEM)

IMPL = "compiled"


cdef inline tuple _expo_add(tuple ea, tuple eb):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(ea)
    cdef tuple ec = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = (<object>PyTuple_GET_ITEM(ea, i)) + (<object>PyTuple_GET_ITEM(eb, i))
        Py_INCREF(v)
        PyTuple_SET_ITEM(ec, i, v)
    return ec


cdef inline void _accumulate(dict out, tuple ec, object prod):
    cdef PyObject *hit = PyDict_GetItem(out, ec)
    cdef object c
    if hit is NULL:
        PyDict_SetItem(out, ec, prod)
    else:
        c = (<object>hit) + prod
        if c:
            PyDict_SetItem(out, ec, c)
        else:
            PyDict_DelItem(out, ec)


def mul(dict a, dict b):
    """Product of two term dicts over the same variable list."""
    cdef dict out = {}
    cdef Py_ssize_t pa, pb
    cdef PyObject *ka
    cdef PyObject *va
    cdef PyObject *kb
    cdef PyObject *vb
    if not a or not b:
        return out
    if len(b) > len(a):
        a, b = b, a
    pb = 0
    while PyDict_Next(b, &pb, &kb, &vb):
        pa = 0
        while PyDict_Next(a, &pa, &ka, &va):
            _accumulate(
                out,
                _expo_add(<tuple>ka, <tuple>kb),
                (<object>va) * (<object>vb),
            )
    return out


def add_into(dict dst, dict src, object scale=1):
    """In-place dst += scale*src; returns dst with zeros dropped.

    dst and src must be distinct dicts.
    """
    cdef Py_ssize_t pos = 0
    cdef PyObject *k
    cdef PyObject *v
    cdef bint unit
    if not src or scale == 0:
        return dst
    unit = scale == 1
    while PyDict_Next(src, &pos, &k, &v):
        _accumulate(
            dst,
            <tuple>k,
            <object>v if unit else scale * <object>v,
        )
    return dst


def mul_monomial(dict a, tuple expo, object coeff):
    """a * coeff*x^expo as a fresh dict; coeff must be nonzero."""
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *k
    cdef PyObject *v
    if not coeff:
        return out
    while PyDict_Next(a, &pos, &k, &v):
        PyDict_SetItem(out, _expo_add(<tuple>k, expo), (<object>v) * coeff)
    return out


def scaled(dict a, object scale):
    """scale*a as a fresh dict."""
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *k
    cdef PyObject *v
    if not scale:
        return out
    while PyDict_Next(a, &pos, &k, &v):
        PyDict_SetItem(out, <tuple>k, scale * <object>v)
    return out


def power(dict a, long k, Py_ssize_t nvars):
    """a**k by binary powering; k >= 0."""
    cdef dict result = {(0,) * nvars: 1}
    cdef dict base
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
