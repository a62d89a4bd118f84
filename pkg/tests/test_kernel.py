"""The two term kernels must be behaviourally identical."""

import random
from fractions import Fraction

import pytest

from wittlam import _kernel_py
from wittlam import kernel

try:
    from wittlam import _kernel_c
except ImportError:
    _kernel_c = None

needs_compiled = pytest.mark.skipif(
    _kernel_c is None, reason="compiled kernel not built"
)


def random_terms(rng, nvars, nterms, rational=False):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, 4) for _ in range(nvars))
        c = rng.randint(-9, 9)
        if rational:
            c = Fraction(c, rng.randint(1, 5))
        if c:
            out[e] = c
    return out


@needs_compiled
def test_mul_agrees():
    rng = random.Random(0)
    for rational in (False, True):
        for _ in range(20):
            a = random_terms(rng, 4, 12, rational)
            b = random_terms(rng, 4, 12, rational)
            assert _kernel_c.mul(a, b) == _kernel_py.mul(a, b)


@needs_compiled
def test_add_into_agrees():
    rng = random.Random(1)
    for scale in (1, -1, 3, Fraction(1, 2), 0):
        a1 = random_terms(rng, 3, 10)
        b = random_terms(rng, 3, 10)
        a2 = dict(a1)
        assert _kernel_c.add_into(a1, b, scale) == _kernel_py.add_into(a2, b, scale)


@needs_compiled
def test_mul_monomial_and_power_agree():
    rng = random.Random(2)
    a = random_terms(rng, 3, 8)
    assert _kernel_c.mul_monomial(a, (1, 0, 2), 5) == _kernel_py.mul_monomial(
        a, (1, 0, 2), 5
    )
    assert _kernel_c.power(a, 3, 3) == _kernel_py.power(a, 3, 3)
    assert _kernel_c.power(a, 0, 3) == {(0, 0, 0): 1}


def test_zero_coefficients_are_dropped():
    a = {(1,): 1}
    b = {(0,): 1, (1,): -1}
    # (x) * (1 - x) then add x^2 back in: the x^2 slot must vanish, not store 0
    prod = kernel.mul(a, b)
    assert prod == {(1,): 1, (2,): -1}
    kernel.add_into(prod, {(2,): 1})
    assert prod == {(1,): 1}


def test_kernel_switch_roundtrip():
    active = kernel.implementation()
    assert kernel.use("pure") == "pure"
    assert kernel.mul({(1,): 2}, {(1,): 3}) == {(2,): 6}
    if _kernel_c is not None:
        assert kernel.use("compiled") == "compiled"
        assert kernel.mul({(1,): 2}, {(1,): 3}) == {(2,): 6}
    kernel.use("auto")
    assert kernel.implementation() in ("pure", "compiled")
    kernel.use(active)


def test_whole_pipeline_on_pure_kernel():
    """The universal polynomials come out identical on the pure kernel."""
    from wittlam.sympoly import UniversalPolyCache, universal_P

    active = kernel.implementation()
    reference = universal_P(4)
    try:
        kernel.use("pure")
        fresh = UniversalPolyCache()
        assert universal_P(4, cache=fresh) == reference
    finally:
        kernel.use(active)
