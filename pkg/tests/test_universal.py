"""The co-representing correspondence: generators, relations, round trips."""

from fractions import Fraction

import pytest

from wittlam.errors import (MembershipError, RelationViolationError,
                            UnsupportedRingError)
from wittlam.ground import GroundRing
from wittlam.lubin import conjugate_structure, random_unit_series
from wittlam.series import TruncSeries
from wittlam.structures import Carrier, standard_structure, validate
from wittlam.sympoly import parse_poly
from wittlam.universal import (GeneratorIndex, HomAssignment,
                               hom_from_structure, relation_V, relation_w,
                               roundtrip_check, structure_from_hom, u_element,
                               universal_adams)

Z = GroundRing.integers()


def test_u_element_symbolic():
    u = u_element(2, 1)
    assert u == parse_poly("2*v_2_1", ("v_2_1",))
    u = u_element(2, 2)
    assert u == parse_poly("2*v_2_2 + 1", ("v_2_2",))


def test_u_element_valued():
    h = HomAssignment.from_depth0(Z, {(2, 2): 0}, primes=(2,), trunc=2, depth=0)
    assert u_element(2, 2, h) == Z.one()
    assert u_element(2, 1, {(2, 1): Z.from_int(3)}) == 6


def test_universal_adams_all_zero_gives_power():
    h = HomAssignment.from_depth0(Z, {}, primes=(2, 3), trunc=6, depth=1)
    psi2 = universal_adams(2, h)
    assert psi2 == TruncSeries.monomial(Z, 1, 2, 6)
    psi3 = universal_adams(3, h)
    assert psi3 == TruncSeries.monomial(Z, 1, 3, 6)


def test_universal_adams_example():
    h = HomAssignment.from_depth0(Z, {(2, 1): 1}, primes=(2,), trunc=4, depth=0)
    assert universal_adams(2, h) == TruncSeries(Z, [0, 2, 1, 0, 0], 4)


def test_universal_adams_symbolic():
    psi = universal_adams(2, trunc=3)
    assert psi[1] == psi.ring.coerce("2*v_2_1")
    assert psi[2] == psi.ring.coerce("1 + 2*v_2_2")
    assert psi[3] == psi.ring.coerce("2*v_2_3")


def test_relation_w_zero_cases():
    h0 = HomAssignment.from_depth0(Z, {}, primes=(2, 3), trunc=6, depth=0)
    assert all(v.is_zero() for v in relation_w(2, 3, h0))
    S = standard_structure("mult", trunc=8)
    h = hom_from_structure(S)
    for p, q in ((2, 3), (2, 5), (3, 7), (5, 7)):
        assert all(v.is_zero() for v in relation_w(p, q, h))
    with pytest.raises(ValueError):
        relation_w(2, 2, h0)


def test_relation_w_nonzero():
    # v_(2,2) = 1 makes psi^2 = 3x^2, which does not commute with psi^3 = x^3
    h = HomAssignment.from_depth0(
        Z, {(2, 2): 1}, primes=(2, 3), trunc=6, depth=0
    )
    ws = relation_w(2, 3, h)
    # 3(x^3)^2 - (3x^2)^3 = 3x^6 - 27x^6 = -24x^6
    assert [v.payload for v in ws] == [0, 0, 0, 0, 0, -24]


def test_relation_V_examples():
    h = HomAssignment.from_depth0(Z, {(2, 1): 1}, primes=(2, 3), trunc=2, depth=2)
    idx = GeneratorIndex(2, 1)
    assert relation_V(idx, 3, h).is_zero()  # 1^3 - 1 - 3*0 = 0
    assert relation_V(GeneratorIndex(2, 2), 3, h).is_zero()
    # v = 2, q = 2: v' = (4 - 2)/2 = 1 and the relation vanishes
    h2 = HomAssignment.from_depth0(Z, {(2, 1): 2}, primes=(2,), trunc=1, depth=1)
    assert h2.get(2, 1, (2,)) == 1
    assert relation_V(GeneratorIndex(2, 1), 2, h2).is_zero()


def test_hom_from_structure_mult():
    S = standard_structure("mult", trunc=8)
    h = hom_from_structure(S)
    assert h.get(2, 1) == 1
    assert h.get(2, 2) == 0
    assert all(h.get(2, i) == 0 for i in range(3, 9))
    assert h.get(3, 1) == 1 and h.get(3, 2) == 1 and h.get(3, 3) == 0
    assert h.get(2, 1, (3,)) == 0  # (1^3 - 1)/3


def test_hom_from_structure_power():
    S = standard_structure("power", trunc=8)
    h = hom_from_structure(S)
    assert all(
        h.get(p, i) == 0 for p in (2, 3, 5, 7) for i in range(1, 9)
    )


def test_hom_requires_admissible_carrier():
    from wittlam.structures import make_dual_structure

    with pytest.raises(UnsupportedRingError):
        hom_from_structure(make_dual_structure(Z, {2: 2}))


def test_hom_rejects_congruence_violation():
    carrier = Carrier.power_series(Z, 4)
    x = carrier.domain.x()
    from wittlam.structures import make_series_structure

    bad = make_series_structure(carrier, {2: x, 3: x}, check=True)
    with pytest.raises(MembershipError):
        hom_from_structure(bad)


def test_structure_from_hom_zero_and_roundtrips():
    h0 = HomAssignment.from_depth0(
        Z, {}, primes=(2, 3, 5, 7), trunc=8, depth=2
    )
    S = structure_from_hom(h0)
    assert S == standard_structure("power", trunc=8)
    for kind in ("power", "mult"):
        S = standard_structure(kind, trunc=8)
        assert roundtrip_check(S)


def test_structure_from_hom_rejects_noncommuting():
    h = HomAssignment.from_depth0(
        Z, {(2, 2): 1}, primes=(2, 3), trunc=6, depth=1
    )
    with pytest.raises(RelationViolationError):
        structure_from_hom(h)


def test_injectivity_witness():
    h_mult = hom_from_structure(standard_structure("mult", trunc=8))
    h_pow = hom_from_structure(standard_structure("power", trunc=8))
    assert h_mult.get(2, 1) != h_pow.get(2, 1)
    assert h_mult != h_pow


def test_roundtrip_on_conjugates():
    base = standard_structure("mult", trunc=8)
    for seed in (1, 2, 3):
        phi = random_unit_series(Z, 8, seed=seed)
        S = conjugate_structure(base, phi)
        assert validate(S).passed
        assert roundtrip_check(S)


def test_fermat_quotient_closure():
    S = standard_structure("mult", trunc=8)
    h = hom_from_structure(S)
    # (u^q - u)/q stays in Z for every assigned value and window prime
    for key, val in h.values.items():
        for q in h.primes:
            quotient = Z.div_int(val ** q - val, q)
            assert quotient.payload.denominator == 1


def test_assignment_json_roundtrip():
    S = standard_structure("mult", trunc=6, primes=(2, 3))
    h = hom_from_structure(S, depth=1)
    data = h.to_json()
    again = HomAssignment.from_json(data)
    assert again == h
    assert again.to_json() == data


def test_assignment_recursion_enforced():
    S = standard_structure("mult", trunc=4, primes=(2,))
    h = hom_from_structure(S, depth=1)
    data = h.to_json()
    for item in data["values"]:
        if item["tail"]:
            item["value"] = "99"
    with pytest.raises(ValueError):
        HomAssignment.from_json(data)


def test_pushforward_over_localization():
    # the correspondence also runs over Q (all primes inverted)
    Q = GroundRing.rationals()
    carrier = Carrier.power_series(Q, 6)
    from wittlam.structures import make_family_structure

    S = make_family_structure(carrier, {p: 5 for p in (2, 3, 5, 7)})
    h = hom_from_structure(S)
    assert h.get(2, 1) == Fraction(5, 2)
    assert roundtrip_check(S)


def test_correspondence_over_p_local_integers():
    # Z_(5): primes 2, 3, 7 are inverted, 5 is not
    R = GroundRing.p_local(5)
    S = standard_structure("mult", ring=R, trunc=8)
    assert validate(S).passed
    h = hom_from_structure(S)
    assert h.target == R
    assert roundtrip_check(S)
    # tail values may use inverted denominators but must stay in R
    for val in h.values.values():
        assert R.contains_payload(val.payload)
