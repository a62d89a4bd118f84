"""Kernel selection: compiled extension when available, pure Python otherwise.

Set the environment variable ``WITTLAM_PURE=1`` before import to force the
pure kernel, or call :func:`use` at runtime (the benchmark does this to
compare the two implementations on identical workloads).
"""

import os

from . import _kernel_py

try:
    from . import _kernel_c
except ImportError:
    _kernel_c = None

if os.environ.get("WITTLAM_PURE"):
    _impl = _kernel_py
else:
    _impl = _kernel_c if _kernel_c is not None else _kernel_py


def implementation():
    """Name of the active kernel: 'pure' or 'compiled'."""
    return _impl.IMPL


def available():
    names = ["pure"]
    if _kernel_c is not None:
        names.append("compiled")
    return names


def use(name):
    """Switch the active kernel ('pure', 'compiled', or 'auto')."""
    global _impl
    if name == "pure":
        _impl = _kernel_py
    elif name == "compiled":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel is not built")
        _impl = _kernel_c
    elif name == "auto":
        _impl = _kernel_c if _kernel_c is not None else _kernel_py
    else:
        raise ValueError(f"unknown kernel {name!r}")
    return _impl.IMPL


def mul(a, b):
    return _impl.mul(a, b)


def add_into(dst, src, scale=1):
    return _impl.add_into(dst, src, scale)


def mul_monomial(a, expo, coeff):
    return _impl.mul_monomial(a, expo, coeff)


def scaled(a, scale):
    return _impl.scaled(a, scale)


def power(a, k, nvars):
    return _impl.power(a, k, nvars)
