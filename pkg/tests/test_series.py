"""Truncated power series: arithmetic, composition, reversion, congruence."""

import math
import random

import pytest

from wittlam.errors import ExactDivisionError, RingMismatchError
from wittlam.ground import GroundRing
from wittlam.series import (SeriesRing, TruncSeries, compose, congruent_mod,
                            revert, series_arith, xadic_valuation)

Z = GroundRing.integers()
Q = GroundRing.rationals()


def S(coeffs, trunc=None, ring=Z, d=1):
    return TruncSeries(ring, coeffs, trunc, d)


def test_series_arith_examples():
    f = S([1, 1], 3)
    g = S([1, -1], 3)
    assert series_arith("mul", f, g) == S([1, 0, -1, 0], 3)
    # truncation kills x*x at N=1
    assert S([0, 1], 1) * S([0, 1], 1) == S([0, 0], 1)
    assert S([1, 2, 1], 2) * S([1, 1, 0], 2) == S([1, 3, 3], 2)
    assert series_arith("add", f, g) == S([2, 0], 3)


def test_series_mismatch():
    with pytest.raises(RingMismatchError):
        S([1], 2) + S([1], 3)
    with pytest.raises(RingMismatchError):
        S([1], 2) * TruncSeries(Q, [1], 2)


def test_compose_examples():
    f = S([0, 0, 1], 4)  # x^2
    g = S([0, 2, 1], 4)  # 2x + x^2
    assert compose(f, g) == S([0, 0, 4, 4, 1], 4)
    h = S([3, 1, 4, 1, 5], 4)
    assert compose(h, TruncSeries.x(Z, 4)) == h
    assert compose(TruncSeries.x(Z, 4), g) == g
    with pytest.raises(ValueError):
        compose(f, S([1, 1], 4))


def test_compose_associative_on_samples():
    rng = random.Random(0)
    for _ in range(15):
        f, g, h = (
            S([0] + [rng.randint(-3, 3) for _ in range(5)], 5) for _ in range(3)
        )
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_revert_examples():
    x = TruncSeries.x(Z, 3)
    assert revert(x) == x
    f = S([0, 1, 1], 3)  # x + x^2
    g = revert(f)
    assert g == S([0, 1, -1, 2], 3)
    assert compose(f, g) == TruncSeries.x(Z, 3)
    assert compose(g, f) == TruncSeries.x(Z, 3)
    with pytest.raises(ExactDivisionError):
        revert(S([0, 2], 3))  # 2 is not a unit of Z
    # but it is a unit of Z[1/2]
    Z2 = GroundRing.localized([2])
    r = revert(TruncSeries(Z2, [0, 2, 1], 3))
    assert compose(TruncSeries(Z2, [0, 2, 1], 3), r) == TruncSeries.x(Z2, 3)


def test_revert_roundtrip_on_samples():
    rng = random.Random(7)
    for _ in range(10):
        f = S([0, rng.choice([1, -1])] + [rng.randint(-4, 4) for _ in range(6)], 7)
        g = revert(f)
        assert compose(f, g) == TruncSeries.x(Z, 7)
        assert compose(g, f) == TruncSeries.x(Z, 7)


def test_congruent_mod():
    f = S([0, 2, 1], 2)
    g = S([0, 0, 1], 2)
    assert congruent_mod(f, g, 2)
    assert not congruent_mod(S([0, 3, 1], 2), g, 2)
    # any pair over Q: p is a unit
    assert congruent_mod(TruncSeries(Q, [0, 1, 7], 2), TruncSeries(Q, [0], 2), 5)
    # psi^2(x) = (1+x)^2 - 1 == x^2 mod 2
    psi = (TruncSeries.x(Z, 8) + 1) ** 2 - 1
    assert congruent_mod(psi, TruncSeries.monomial(Z, 1, 2, 8), 2)


def test_xadic_valuation():
    assert xadic_valuation(S([0, 0, 1], 4, d=4)) == 8
    assert xadic_valuation(S([0, 0, 0], 2)) == math.inf
    assert xadic_valuation(S([1, 1], 2)) == 0


def test_valuation_superadditive_on_samples():
    rng = random.Random(3)
    for _ in range(25):
        f = S([rng.randint(-2, 2) for _ in range(6)], 5)
        g = S([rng.randint(-2, 2) for _ in range(6)], 5)
        vf, vg = xadic_valuation(f), xadic_valuation(g)
        # truncation caps what we can observe at degree N
        assert xadic_valuation(f * g) >= min(vf + vg, 6)


def test_series_ring_domain():
    dom = SeriesRing(Z, 4)
    x = dom.x()
    assert dom.one() + x == S([1, 1], 4)
    assert dom.div_int(S([0, 2, 4], 4), 2) == S([0, 1, 2], 4)
    with pytest.raises(ExactDivisionError):
        dom.div_int(S([0, 1], 4), 2)
    assert dom.is_p_divisible(S([0, 2, 4], 4), 2)
    assert dom.parse("1,2,3") == S([1, 2, 3], 4)
    assert dom.format(S([1, 2, 3], 4)) == "1,2,3,0,0"


def test_revert_over_dual_numbers():
    D = GroundRing.dual(Z)
    # linear coefficient 1 + 2*eps is a unit of Z[eps]
    f = TruncSeries(D, [(0, 0), (1, 2), (3, -1), (0, 5)], 3)
    g = revert(f)
    assert compose(f, g) == TruncSeries.x(D, 3)
    assert compose(g, f) == TruncSeries.x(D, 3)


def test_series_text_and_json():
    f = S([1, 0, -2], 4)
    assert str(f) == "1 - 2*x^2"
    assert TruncSeries.from_json(f.to_json()) == f
    dual = GroundRing.dual(Z)
    g = TruncSeries(dual, [(0, 1), (2, 0)], 2)
    assert "eps" in str(g)
    assert TruncSeries.from_json(g.to_json()) == g
