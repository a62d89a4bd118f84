"""Structures: validation, Adams application, the Newton lift, axioms."""

from fractions import Fraction

import pytest

from wittlam.errors import (PrimeWindowError, RingMismatchError,
                            UnsupportedRingError, WilkersonError)
from wittlam.ground import GroundRing, binom_fraction
from wittlam.lambda_witt import coalgebra_check
from wittlam.structures import (Carrier, LambdaStructure, adams_apply,
                                axiom_check, default_samples, dual_iso_test,
                                make_binomial_structure, make_dual_structure,
                                make_family_structure, make_series_structure,
                                newton_lambda, standard_structure, validate)

Z = GroundRing.integers()
Q = GroundRing.rationals()


def test_validate_multiplicative_structure():
    S = standard_structure("mult", trunc=8, primes=(2, 3, 5))
    report = validate(S)
    assert report.passed
    names = [c.name for c in report.checks]
    assert any("commute" in n for n in names)
    assert any("frobenius" in n for n in names)


def test_validate_over_p_local_ground():
    # over Z_(3) the p = 2 congruence is vacuous (2 is inverted) while
    # p = 3 is a real condition; both must come out true for (1+x)^p - 1
    R = GroundRing.p_local(3)
    S = standard_structure("mult", ring=R, trunc=6, primes=(2, 3))
    assert validate(S).passed
    # and a structure that only breaks the non-inverted prime is caught
    carrier = Carrier.power_series(R, 6)
    x = carrier.domain.x()
    bad = make_series_structure(carrier, {2: x * 9, 3: x * 9}, check=True)
    report = validate(bad)
    by_name = {c.name: c.passed for c in report.checks}
    assert by_name["frobenius psi^2 == x^2 mod 2"]  # vacuous: 2 inverted
    assert not by_name["frobenius psi^3 == x^3 mod 3"]  # 9x != x^3 mod 3


def test_validate_identity_adams_fails_frobenius():
    carrier = Carrier.power_series(Z, 8)
    x = carrier.domain.x()
    S = make_series_structure(carrier, {2: x}, primes=(2,))
    report = validate(S)
    assert not report.passed  # x is not congruent to x^2 mod 2


def test_validate_dual_divisibility_failure():
    carrier = Carrier.dual_numbers(Z)
    S = LambdaStructure(carrier, (2,), {2: 3}, check=False)
    report = validate(S)
    assert not report.passed
    with pytest.raises(WilkersonError):
        LambdaStructure(carrier, (2,), {2: 3})  # checked constructor rejects


def test_adams_apply_dual():
    S = make_dual_structure(Z, {2: 6, 3: 6})
    r = S.carrier.domain.coerce((5, 1))
    out = adams_apply(S, 6, r)
    assert out == S.carrier.domain.coerce((5, 36))
    assert adams_apply(S, 1, r) == r
    with pytest.raises(PrimeWindowError):
        adams_apply(S, 5, r)


def test_adams_apply_series():
    S = standard_structure("mult", trunc=8)
    x = S.carrier.domain.x()
    one = S.carrier.domain.one()
    assert adams_apply(S, 4, x) == (x + one) ** 4 - one
    assert adams_apply(S, 6, x) == (x + one) ** 6 - one
    # psi^m psi^n = psi^{mn} on samples
    r = x + x * x
    lhs = adams_apply(S, 2, adams_apply(S, 3, r))
    assert lhs == adams_apply(S, 6, r)


def test_newton_lambda_binomial_values():
    S = make_binomial_structure()
    assert newton_lambda(S, 2, Z.from_int(5)) == 10
    assert newton_lambda(S, 3, Z.from_int(4)) == 4
    assert newton_lambda(S, 1, Z.from_int(-7)) == -7
    for m in range(-10, 11):
        for n in range(7):
            got = newton_lambda(S, n, Z.from_int(m))
            expect = binom_fraction(m, n)
            assert got.payload == expect, (m, n)


def test_newton_lambda_wilkerson_failure():
    carrier = Carrier.power_series(Z, 6)
    x = carrier.domain.x()
    S = make_series_structure(carrier, {p: x for p in (2, 3, 5)}, check=True)
    # psi = id on Z[[x]] is not a lambda-ring datum: lambda^2(x) = (x - x^2)/2
    with pytest.raises(WilkersonError):
        newton_lambda(S, 2, x)


def test_newton_lambda_on_dual():
    S = make_dual_structure(Z, {2: 2, 3: 3})
    eps = S.carrier.eps()
    # lambda^2(eps) = -(psi^2(eps) - eps*eps)/2 = -(2 eps)/2 = -eps
    assert newton_lambda(S, 2, eps) == S.carrier.domain.coerce((0, -1))


def test_axiom_check_binomial():
    S = make_binomial_structure()
    report = axiom_check(S, nmax=4, bound=6)
    assert report.passed
    # the Vandermonde instance from r=2, s=3, n=3 is among the checks
    lsum = S.lambda_values(3, Z.from_int(5))
    assert lsum[3].payload == 10


def test_axiom_check_multiplicative_series():
    S = standard_structure("mult", trunc=6, primes=(2, 3, 5))
    report = axiom_check(S, nmax=3, bound=4)
    assert report.passed, [c.name for c in report.checks if not c.passed]


def test_axiom_check_family():
    carrier = Carrier.trunc_poly(Q, 3)
    S = make_family_structure(carrier, {2: 5, 3: 7})
    assert validate(S).passed
    report = axiom_check(S, nmax=3, bound=4)
    assert report.passed


def test_filtration_closure_reported():
    S = standard_structure("mult", trunc=6, primes=(2, 3, 5))
    report = axiom_check(S, nmax=3, bound=2)
    assert any("filtration closure" in c.name for c in report.checks)


def test_make_dual_structure():
    S = make_dual_structure(Z, {2: 2, 3: 3})
    assert validate(S).passed
    S0 = make_dual_structure(Z, {2: 0, 3: 0, 5: 0, 7: 0})
    assert validate(S0).passed
    SQ = make_dual_structure(Q, {2: Fraction(1, 3)})
    assert validate(SQ).passed
    with pytest.raises(WilkersonError):
        make_dual_structure(Z, {2: 3})


def test_dual_iso():
    a = make_dual_structure(Z, {2: 2, 3: 3})
    b = make_dual_structure(Z, {2: 2, 3: 3})
    c = make_dual_structure(Z, {2: 4, 3: 3})
    assert dual_iso_test(a, b)
    assert not dual_iso_test(a, c)
    z1 = make_dual_structure(Z, {2: 0, 3: 0})
    z2 = make_dual_structure(Z, {2: 0, 3: 0})
    assert dual_iso_test(z1, z2)
    with pytest.raises(RingMismatchError):
        dual_iso_test(a, make_dual_structure(Q, {2: 2, 3: 3}))
    with pytest.raises(RingMismatchError):
        dual_iso_test(a, make_dual_structure(Z, {2: 2, 3: 3, 5: 5}))


def test_make_family_structure():
    S = make_family_structure(Carrier.power_series(Q, 8), {2: Fraction(1, 2)})
    assert validate(S).passed
    Sid = make_family_structure(
        Carrier.trunc_poly(Q, 3), {p: 1 for p in (2, 3, 5, 7)}
    )
    assert validate(Sid).passed
    with pytest.raises(UnsupportedRingError):
        make_family_structure(Carrier.power_series(Z, 4), {2: 1})
    with pytest.raises(ValueError):
        make_family_structure(Carrier.power_series(Q, 4), {2: 0})


def test_family_members_differ():
    QY = GroundRing.rational_poly(("y",))
    carrier = Carrier.power_series(QY, 4)
    S1 = make_family_structure(carrier, {2: 5, 3: 7})
    S2 = make_family_structure(carrier, {2: 6, 3: 7})
    assert S1 != S2
    assert S1.adams_series(2).linear_coeff() == QY.from_int(5)


def test_coalgebra_check_examples():
    Sb = make_binomial_structure()
    rep = coalgebra_check(Sb, [3], M=3)
    assert rep.passed
    Sd = make_dual_structure(Z, {2: 2, 3: 6})
    rep = coalgebra_check(Sd, [Sd.carrier.eps()], M=2)
    assert rep.passed


def test_coalgebra_counit_is_lambda1():
    S = make_binomial_structure()
    rep = coalgebra_check(S, [4], M=2)
    assert any("counit" in law and ok for _, law, ok, _ in rep.entries)


def test_structure_json_roundtrip():
    for S in (
        standard_structure("mult", trunc=6, primes=(2, 3)),
        make_dual_structure(Z, {2: 2, 3: 3}),
        make_binomial_structure(),
        make_family_structure(Carrier.trunc_poly(Q, 4), {2: 5, 3: 7}),
    ):
        data = S.to_json()
        again = LambdaStructure.from_json(data)
        assert again == S
        assert again.to_json() == data


def test_default_samples_shapes():
    assert len(default_samples(Carrier.ground(Z))) == 3
    assert len(default_samples(Carrier.dual_numbers(Z))) == 3
    assert len(default_samples(Carrier.power_series(Z, 5))) == 3
