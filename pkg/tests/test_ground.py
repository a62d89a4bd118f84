"""Ground rings: exact scalars, membership, divisibility, binomials."""

import math
import random
from fractions import Fraction

import pytest

from wittlam.errors import (ExactDivisionError, MembershipError,
                            RingMismatchError)
from wittlam.ground import (EpsIdeal, GroundRing, PrimeIdeal, PrimeSet,
                            binom_fraction, binomial, factorize, is_p_divisible,
                            is_prime, parse_ring, ring_arith)

Z = GroundRing.integers()
Q = GroundRing.rationals()
Z2 = GroundRing.localized([2])
Zp5 = GroundRing.p_local(5)
DZ = GroundRing.dual(Z)


def test_prime_helpers():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}


def test_rational_arith():
    a = Q.coerce(Fraction(1, 2))
    b = Q.coerce(Fraction(1, 3))
    assert ring_arith("add", a, b) == Fraction(5, 6)
    assert ring_arith("sub", a, b) == Fraction(1, 6)
    assert ring_arith("mul", a, b) == Fraction(1, 6)


def test_dual_multiplication_drops_eps_squared():
    a = DZ.coerce((2, 3))
    b = DZ.coerce((5, 7))
    # (2 + 3e)(5 + 7e) = 10 + (14 + 15)e, the e^2 term vanishes
    assert (a * b).payload == (Fraction(10), Fraction(29))
    assert str(a * b) == "10 + 29*eps"


def test_membership_errors():
    with pytest.raises(MembershipError):
        Z2.coerce(Fraction(1, 3))
    # 1/2 is fine in Z[1/2]
    assert Z2.coerce(Fraction(1, 2)).payload == Fraction(1, 2)
    with pytest.raises(MembershipError):
        Z.coerce(Fraction(1, 2))


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        ring_arith("add", Z.from_int(1), Q.from_int(1))


def test_p_divisibility():
    assert is_p_divisible(Z.from_int(6), 2)
    assert not is_p_divisible(Z.from_int(3), 2)
    # 2 is a unit in Q, so everything is 2-divisible
    assert is_p_divisible(Q.from_int(3), 2)
    # Z_(5): 2 is inverted, 5 is not
    assert is_p_divisible(Zp5.from_int(3), 2)
    assert not is_p_divisible(Zp5.from_int(3), 5)
    assert is_p_divisible(Zp5.from_int(10), 5)
    # polynomial algebras are Q-algebras
    QY = GroundRing.rational_poly(("y",))
    assert QY.is_p_divisible(QY.coerce("y"), 7)
    # dual numbers: componentwise
    assert is_p_divisible(DZ.coerce((4, 6)), 2)
    assert not is_p_divisible(DZ.coerce((4, 3)), 2)


def test_divisibility_closed_under_addition():
    rng = random.Random(0)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        a = Z.from_int(p * rng.randint(-20, 20))
        b = Z.from_int(p * rng.randint(-20, 20))
        assert is_p_divisible(a + b, p)


def test_binomial_values():
    v, in_ring = binomial(Z.from_int(5), 2)
    assert v == 10 and in_ring
    # (-1)(-2)(-3)/6 = -1
    v, in_ring = binomial(Z.from_int(-1), 3)
    assert v == -1 and in_ring
    # (1/2)(-1/2)/2 = -1/8
    v, in_ring = binomial(Q.coerce(Fraction(1, 2)), 2)
    assert v == Fraction(-1, 8) and in_ring
    # 1/2 not in Z: C(1/2-ish) n/a; instead: C(3,2)=3 in Z[1/2] stays in ring
    v, in_ring = binomial(Z2.coerce(Fraction(1, 2)), 2)
    assert v == Fraction(-1, 8) and in_ring  # 8 is a power of 2


def test_binomial_domain_property_of_Z():
    # against the independent reflection C(m, n) = (-1)^n C(n-m-1, n) for m < 0
    for m in range(-20, 21):
        for n in range(11):
            v, in_ring = binomial(Z.from_int(m), n)
            assert in_ring, (m, n)
            if m >= 0:
                assert v == math.comb(m, n)
            else:
                assert v == (-1) ** n * math.comb(n - m - 1, n)


def test_binom_fraction_matches_binomial():
    assert binom_fraction(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_fraction(-3, 3) == -10


def test_binomial_over_dual_numbers():
    # C(2 + 3e, 2) = (2+3e)(1+3e)/2 = (2 + 9e)/2 = 1 + 9/2 e: not in Z[eps]
    v, in_ring = binomial(DZ.coerce((2, 3)), 2)
    assert v.payload == (Fraction(1), Fraction(9, 2))
    assert not in_ring
    # but C(3 + 2e, 2) = (3+2e)(2+2e)/2 = (6 + 10e)/2 = 3 + 5e: in-ring
    v, in_ring = binomial(DZ.coerce((3, 2)), 2)
    assert v == GroundRing.dual(GroundRing.rationals()).coerce((3, 5))
    assert in_ring


def test_ring_axioms_on_samples():
    rng = random.Random(1)
    QY = GroundRing.rational_poly(("y1", "y2"))
    DQ = GroundRing.dual(Q)

    def rand_elem(ring):
        if ring.kind == "localized_integers":
            den = 1
            if ring.inverted.inverts(2):
                den = rng.choice([1, 2, 4])
            return ring.coerce(Fraction(rng.randint(-9, 9), den))
        if ring.kind == "rational_poly":
            from wittlam.sympoly import MPoly

            terms = {}
            for _ in range(3):
                e = tuple(rng.randint(0, 2) for _ in ring.variables)
                terms[e] = rng.randint(-4, 4)
            return ring.coerce(MPoly(ring.variables, terms))
        a = rand_elem(ring.base)
        b = rand_elem(ring.base)
        return ring.coerce((a.payload, b.payload))

    for ring in (Z, Q, Z2, Zp5, QY, DZ, DQ):
        for _ in range(12):
            a, b, c = (rand_elem(ring) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


def test_div_int():
    assert Z.div_int(Z.from_int(6), 3) == 2
    with pytest.raises(ExactDivisionError):
        Z.div_int(Z.from_int(5), 3)
    assert Q.div_int(Q.from_int(5), 3) == Fraction(5, 3)
    assert DZ.div_int(DZ.coerce((4, 6)), 2) == DZ.coerce((2, 3))


def test_try_invert():
    assert Z.try_invert(Z.from_int(-1)) == -1
    assert Z.try_invert(Z.from_int(2)) is None
    assert Z2.try_invert(Z2.from_int(2)) == Fraction(1, 2)
    assert Q.try_invert(Q.from_int(0)) is None
    inv = DZ.try_invert(DZ.coerce((1, 5)))
    assert inv * DZ.coerce((1, 5)) == DZ.one()


def test_ideals():
    assert Z.in_ideal(Z.from_int(6), PrimeIdeal(3))
    assert not Z.in_ideal(Z.from_int(5), PrimeIdeal(3))
    assert DZ.in_ideal(DZ.coerce((0, 7)), EpsIdeal())
    assert not DZ.in_ideal(DZ.coerce((1, 0)), EpsIdeal())


def test_format_parse_roundtrip():
    for ring, text in [
        (Z, "-7"),
        (Q, "5/6"),
        (DZ, "2 + 3*eps"),
        (DZ, "2 - 3*eps"),
        (DZ, "eps"),
        (DZ, "-4"),
    ]:
        elem = ring.coerce(text)
        again = ring.coerce(ring.format_payload(elem.payload))
        assert elem == again


def test_parse_ring_names():
    assert parse_ring("Z") == Z
    assert parse_ring("Q") == Q
    assert parse_ring("Z[1/2]") == Z2
    assert parse_ring("Z_(5)") == Zp5
    assert parse_ring("Q[y1,y2]") == GroundRing.rational_poly(("y1", "y2"))
    assert parse_ring("dual(Z)") == DZ


def test_ring_json_roundtrip():
    for ring in (Z, Q, Z2, Zp5, DZ, GroundRing.rational_poly(("y",))):
        assert GroundRing.from_json(ring.to_json()) == ring


def test_prime_set():
    s = PrimeSet.cofinite([5])
    assert s.inverts(2) and not s.inverts(5)
    assert PrimeSet.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        PrimeSet.finite([4])
