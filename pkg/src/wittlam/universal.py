"""The universal ring behind filtered lambda-ring structures on R[[x]].

The co-representing ring is generated by indeterminates v indexed by a
prime p, a coefficient slot i >= 1, and a finite tail of primes
(q_1, .., q_n); we never materialize the quotient.  What is computable at
a finite window is the correspondence itself:

  * from Adams data psi^p(x) = sum r_{(p,i)} x^i over a ring R between
    Z and Q, the depth-0 assignment v_{(p,i)} |-> r_{(p,i)}/p (and
    (r_{(p,p)}-1)/p at the Frobenius slot i = p), with tail slots filled
    in by iterated Fermat quotients (u^q - u)/q;
  * from an assignment, the pushforward structure psi^p(x) =
    sum u_{(p,i)} x^i with u_{(p,i)} = p v_{(p,i)} (+1 at i = p),
    accepted only if the commutator coefficients w_{(p,q,l)} vanish.
"""

from typing import NamedTuple

from .errors import (MembershipError, RelationViolationError,
                     UnsupportedRingError)
from .ground import GroundRing
from .series import TruncSeries, compose
from .sympoly import MPoly
from .structures import (DEFAULT_PRIMES, POWER_SERIES, Carrier,
                         LambdaStructure, validate)

DEFAULT_DEPTH = 2


class GeneratorIndex(NamedTuple):
    """Index (p, i, q_1..q_n) of a generator v of the universal ring."""

    p: int
    i: int
    tail: tuple = ()

    def label(self):
        bits = [str(self.p), str(self.i), *map(str, self.tail)]
        return "v(" + ",".join(bits) + ")"


def u_symbol(p, i):
    return f"v_{p}_{i}"


def u_element(p, i, values=None):
    """u_{(p,i)} = p*v_{(p,i)}, plus 1 when i = p.

    With `values` (a HomAssignment or a {(p, i): element} map) the scalar
    is returned; without, a symbolic MPoly in the single variable
    v_{p}_{i}.
    """
    if values is None:
        name = u_symbol(p, i)
        v = MPoly.gen((name,), name)
        out = v * p
        return out + 1 if i == p else out
    if isinstance(values, HomAssignment):
        v = values.get(p, i)
    else:
        v = values[(p, i)]
    out = v * p
    return out + 1 if i == p else out


class HomAssignment:
    """A ring map out of the universal ring, within a finite window.

    Values are stored for every index with i <= N and tail length <= D.
    The tail recursion  v_{..., q} = (v_...^q - v_...)/q  is what defines
    the deeper generators' images, so it is enforced at construction;
    every value must lie in the target ring.
    """

    __slots__ = ("target", "primes", "trunc", "depth", "values")

    def __init__(self, target, primes, trunc, depth, values):
        self.target = target
        self.primes = tuple(sorted(primes))
        self.trunc = trunc
        self.depth = depth
        self.values = dict(values)
        self._verify()

    @classmethod
    def from_depth0(cls, target, depth0, primes=DEFAULT_PRIMES, trunc=8,
                    depth=DEFAULT_DEPTH):
        """Extend depth-0 values by the Fermat-quotient recursion."""
        values = {}
        for p in primes:
            for i in range(1, trunc + 1):
                values[GeneratorIndex(p, i)] = target.coerce(
                    depth0.get((p, i), 0)
                )
        frontier = [k for k in values]
        for _ in range(depth):
            nxt = []
            for key in frontier:
                for q in primes:
                    child = GeneratorIndex(key.p, key.i, key.tail + (q,))
                    values[child] = _fermat_quotient(target, values[key], q)
                    nxt.append(child)
            frontier = nxt
        return cls(target, primes, trunc, depth, values)

    def _verify(self):
        for key, val in self.values.items():
            if val.ring != self.target:
                raise MembershipError(f"value at {key.label()} not in target")
            if key.tail:
                parent = GeneratorIndex(key.p, key.i, key.tail[:-1])
                if parent not in self.values:
                    raise ValueError(f"missing parent of {key.label()}")
                expect = _fermat_quotient(
                    self.target, self.values[parent], key.tail[-1]
                )
                if expect != val:
                    raise ValueError(
                        f"value at {key.label()} violates the tail recursion"
                    )

    def get(self, p, i, tail=()):
        return self.values[GeneratorIndex(p, i, tuple(tail))]

    def __eq__(self, other):
        if not isinstance(other, HomAssignment):
            return NotImplemented
        return (
            self.target == other.target
            and self.primes == other.primes
            and self.trunc == other.trunc
            and self.depth == other.depth
            and self.values == other.values
        )

    def to_json(self):
        vals = []
        for key in sorted(self.values):
            vals.append(
                {
                    "p": key.p,
                    "i": key.i,
                    "tail": list(key.tail),
                    "value": self.target.format_payload(self.values[key].payload),
                }
            )
        return {
            "target": self.target.to_json(),
            "primes": list(self.primes),
            "N": self.trunc,
            "depth": self.depth,
            "values": vals,
        }

    @classmethod
    def from_json(cls, data):
        target = GroundRing.from_json(data["target"])
        values = {}
        for item in data["values"]:
            key = GeneratorIndex(item["p"], item["i"], tuple(item["tail"]))
            values[key] = target.coerce(item["value"])
        return cls(
            target, data["primes"], data["N"], data["depth"], values
        )


def _fermat_quotient(ring, u, q):
    """(u^q - u)/q, exact in the ring by the Fermat congruence."""
    return ring.div_int(u ** q - u, q)


def relation_V(index, q_next, assignment):
    """The relation element v^q - v - q*v' at an assignment; zero iff the
    tail recursion holds there."""
    v = assignment.get(index.p, index.i, index.tail)
    v2 = assignment.get(index.p, index.i, index.tail + (q_next,))
    return v ** q_next - v - v2 * q_next


def universal_adams(p, assignment=None, trunc=8, primes=None):
    """The universal Adams series psi^p(x) = sum_{i<=N} u_{(p,i)} x^i.

    Evaluated under an assignment it is a series over the target ring;
    without one it is symbolic over Q[v_p_1..v_p_N].
    """
    if assignment is not None:
        ring = assignment.target
        trunc = assignment.trunc
        coeffs = [ring.zero()]
        for i in range(1, trunc + 1):
            u = assignment.get(p, i) * p
            if i == p:
                u = u + 1
            coeffs.append(u)
        return TruncSeries(ring, coeffs, trunc)
    names = tuple(u_symbol(p, i) for i in range(1, trunc + 1))
    ring = GroundRing.rational_poly(names)
    coeffs = [ring.zero()]
    for i in range(1, trunc + 1):
        u = ring.element(MPoly.gen(names, u_symbol(p, i))) * p
        if i == p:
            u = u + 1
        coeffs.append(u)
    return TruncSeries(ring, coeffs, trunc)


def relation_w(p, q, assignment=None, trunc=8):
    """Coefficients w_{(p,q,l)} of psi^p(psi^q(x)) - psi^q(psi^p(x)).

    All zero exactly when the two Adams series commute mod x^{N+1}.
    Symbolic when no assignment is given (over the v-variables of both
    primes).
    """
    if p == q:
        raise ValueError("relation_w needs distinct primes")
    if assignment is not None:
        fp = universal_adams(p, assignment)
        fq = universal_adams(q, assignment)
    else:
        names = tuple(u_symbol(p, i) for i in range(1, trunc + 1)) + tuple(
            u_symbol(q, i) for i in range(1, trunc + 1)
        )
        ring = GroundRing.rational_poly(names)

        def series(pp):
            coeffs = [ring.zero()]
            for i in range(1, trunc + 1):
                u = ring.element(MPoly.gen(names, u_symbol(pp, i))) * pp
                if i == pp:
                    u = u + 1
                coeffs.append(u)
            return TruncSeries(ring, coeffs, trunc)

        fp, fq = series(p), series(q)
    diff = compose(fp, fq) - compose(fq, fp)
    return list(diff.coeffs[1:])


def hom_from_structure(S, depth=DEFAULT_DEPTH):
    """The assignment corresponding to a structure on R[[x]], R in [Z, Q].

    Depth-0 values divide the Adams coefficients by p (shifting by 1 at
    the Frobenius slot); the Frobenius congruence makes these divisions
    land in R, and failures mean S violates the psi-ring congruence.
    """
    carrier = S.carrier
    if carrier.kind != POWER_SERIES or not carrier.ground_between_Z_and_Q():
        raise UnsupportedRingError(
            "the correspondence needs a power series carrier over a ring "
            "between Z and Q"
        )
    R = carrier.ring
    depth0 = {}
    for p in S.primes:
        psi = S.adams_series(p)
        for i in range(1, carrier.series_trunc + 1):
            r = psi[i]
            if i == p:
                r = r - R.one()
            try:
                depth0[(p, i)] = R.div_int(r, p)
            except Exception as exc:
                raise MembershipError(
                    f"structure violates the psi-ring congruence at "
                    f"(p={p}, i={i}): {exc}"
                ) from exc
    return HomAssignment.from_depth0(
        R, depth0, S.primes, carrier.series_trunc, depth
    )


def structure_from_hom(assignment, carrier=None, check=True):
    """Pushforward of the universal Adams series along an assignment.

    Rejects assignments whose images do not commute (nonzero w-relation)
    or fail validation.
    """
    if carrier is None:
        carrier = Carrier.power_series(assignment.target, assignment.trunc)
    if carrier.ring != assignment.target:
        raise UnsupportedRingError("carrier ground ring must match the target")
    adams = {p: universal_adams(p, assignment) for p in assignment.primes}
    S = LambdaStructure(carrier, assignment.primes, adams)
    if check:
        for a, p in enumerate(assignment.primes):
            for q in assignment.primes[a + 1 :]:
                ws = relation_w(p, q, assignment)
                if any(not w.is_zero() for w in ws):
                    raise RelationViolationError(
                        f"universal Adams series for {p} and {q} do not "
                        f"commute under this assignment"
                    )
        report = validate(S)
        if not report.passed:
            raise RelationViolationError(
                "pushforward structure fails validation:\n" + str(report)
            )
    return S


def roundtrip_check(S, depth=DEFAULT_DEPTH):
    """structure -> assignment -> structure is the identity (and back)."""
    h = hom_from_structure(S, depth)
    S2 = structure_from_hom(h, S.carrier)
    if S2 != S:
        return False
    h2 = hom_from_structure(S2, depth)
    return h2 == h
