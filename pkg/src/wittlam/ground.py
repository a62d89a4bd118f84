"""Exact scalars, ground-ring descriptors, ideal membership, divisibility.

Three ring kinds cover every coefficient domain in the library:

  * localizations Z[S^-1] of the integers, given by the set S of inverted
    primes (finite, cofinite, or all); this captures Z, Z_(p) and Q,
  * polynomial algebras Q[y_1..y_k] over the rationals,
  * dual numbers B[eps] (eps^2 = 0) over one of the above.

Scalars are stdlib Fractions (always reduced, positive denominator);
polynomial payloads are MPoly; dual payloads are (a, b) pairs standing
for a + b*eps.  Elements are immutable and freely shareable.
"""

import math
from fractions import Fraction

from .errors import (ExactDivisionError, MembershipError, RingMismatchError,
                     UnsupportedIdealError, UnsupportedRingError)
from .sympoly import MPoly, parse_poly

ExactRational = Fraction


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n):
    """Prime factorization of a positive integer as {p: e}."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class PrimeSet:
    """A set of primes: finite, cofinite, or all."""

    __slots__ = ("kind", "primes")

    def __init__(self, kind, primes=()):
        if kind not in ("finite", "cofinite", "all"):
            raise ValueError(f"bad prime-set kind {kind!r}")
        primes = frozenset(primes)
        for p in primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        self.kind = kind
        self.primes = primes

    @classmethod
    def none(cls):
        return cls("finite", ())

    @classmethod
    def finite(cls, primes):
        return cls("finite", primes)

    @classmethod
    def cofinite(cls, excluded):
        return cls("cofinite", excluded)

    @classmethod
    def all_primes(cls):
        return cls("all")

    def inverts(self, p):
        if self.kind == "all":
            return True
        if self.kind == "finite":
            return p in self.primes
        return p not in self.primes

    def __eq__(self, other):
        return (
            isinstance(other, PrimeSet)
            and self.kind == other.kind
            and self.primes == other.primes
        )

    def __hash__(self):
        return hash((self.kind, self.primes))

    def __str__(self):
        ps = ",".join(str(p) for p in sorted(self.primes))
        if self.kind == "all":
            return "all"
        if self.kind == "finite":
            return "{%s}" % ps
        return "all\\{%s}" % ps

    def to_json(self):
        if self.kind == "all":
            return "all"
        if self.kind == "finite":
            return {"finite": sorted(self.primes)}
        return {"cofinite": sorted(self.primes)}

    @classmethod
    def from_json(cls, data):
        if data == "all":
            return cls.all_primes()
        if "finite" in data:
            return cls.finite(data["finite"])
        return cls.cofinite(data["cofinite"])


ZLOC, QPOLY, DUAL = "localized_integers", "rational_poly", "dual_numbers"


class GroundRing:
    """Descriptor of a coefficient ring; also its element factory."""

    __slots__ = ("kind", "inverted", "variables", "base")

    def __init__(self, kind, inverted=None, variables=None, base=None):
        self.kind = kind
        self.inverted = inverted
        self.variables = tuple(variables) if variables is not None else None
        self.base = base
        if kind == DUAL:
            if base is None or base.kind == DUAL:
                raise ValueError("dual numbers need a non-dual base ring")

    # -- constructors -----------------------------------------------------

    @classmethod
    def integers(cls):
        return cls(ZLOC, inverted=PrimeSet.none())

    @classmethod
    def rationals(cls):
        return cls(ZLOC, inverted=PrimeSet.all_primes())

    @classmethod
    def localized(cls, inverted):
        if not isinstance(inverted, PrimeSet):
            inverted = PrimeSet.finite(inverted)
        return cls(ZLOC, inverted=inverted)

    @classmethod
    def p_local(cls, p):
        """Z_(p): every prime except p is inverted."""
        return cls(ZLOC, inverted=PrimeSet.cofinite([p]))

    @classmethod
    def rational_poly(cls, variables):
        return cls(QPOLY, variables=variables)

    @classmethod
    def dual(cls, base):
        return cls(DUAL, base=base)

    # -- predicates ---------------------------------------------------------

    def is_q_algebra(self):
        if self.kind == ZLOC:
            return self.inverted.kind == "all"
        if self.kind == QPOLY:
            return True
        return self.base.is_q_algebra()

    def between_Z_and_Q(self):
        return self.kind == ZLOC

    def fraction_field(self):
        """Smallest supported ring in which division by integers works."""
        if self.kind == ZLOC:
            return GroundRing.rationals()
        if self.kind == QPOLY:
            return self
        return GroundRing.dual(self.base.fraction_field())

    def __eq__(self, other):
        return (
            isinstance(other, GroundRing)
            and self.kind == other.kind
            and self.inverted == other.inverted
            and self.variables == other.variables
            and self.base == other.base
        )

    def __hash__(self):
        return hash((self.kind, self.inverted, self.variables, self.base))

    def __str__(self):
        if self.kind == ZLOC:
            if self.inverted.kind == "all":
                return "Q"
            if self.inverted.kind == "finite":
                if not self.inverted.primes:
                    return "Z"
                inv = ",".join(f"1/{p}" for p in sorted(self.inverted.primes))
                return f"Z[{inv}]"
            ex = sorted(self.inverted.primes)
            if len(ex) == 1:
                return f"Z_({ex[0]})"
            return f"Z[inv {self.inverted}]"
        if self.kind == QPOLY:
            return "Q[%s]" % ",".join(self.variables)
        return f"dual({self.base})"

    __repr__ = __str__

    # -- payload validity and membership -------------------------------------

    def _payload_ok(self, payload):
        if self.kind == ZLOC:
            return isinstance(payload, Fraction)
        if self.kind == QPOLY:
            return isinstance(payload, MPoly) and payload.vars == self.variables
        return (
            isinstance(payload, tuple)
            and len(payload) == 2
            and self.base._payload_ok(payload[0])
            and self.base._payload_ok(payload[1])
        )

    def contains_payload(self, payload):
        """Membership of a fraction-field value in this ring."""
        if self.kind == ZLOC:
            den = payload.denominator
            if den == 1:
                return True
            return all(self.inverted.inverts(p) for p in factorize(den))
        if self.kind == QPOLY:
            return True
        return self.base.contains_payload(payload[0]) and self.base.contains_payload(
            payload[1]
        )

    # -- element factory ------------------------------------------------------

    def element(self, payload, check=True):
        if not self._payload_ok(payload):
            raise UnsupportedRingError(
                f"payload {payload!r} has the wrong shape for {self}"
            )
        if check and not self.contains_payload(payload):
            raise MembershipError(f"{self.format_payload(payload)} is not in {self}")
        return RingElement(self, payload)

    def zero(self):
        return RingElement(self, self._pzero())

    def one(self):
        return RingElement(self, self._pfrom_int(1))

    def from_int(self, n):
        return RingElement(self, self._pfrom_int(n))

    def coerce(self, value):
        """Build an element from an int, Fraction, str, pair, or MPoly."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self.element(self.parse_payload(value))
        if self.kind == ZLOC and isinstance(value, Fraction):
            return self.element(value)
        if self.kind == QPOLY:
            if isinstance(value, Fraction):
                return self.element(MPoly.const(self.variables, value))
            if isinstance(value, MPoly):
                return self.element(value)
        if self.kind == DUAL:
            if isinstance(value, tuple) and len(value) == 2:
                a = self.base.coerce(value[0])
                b = self.base.coerce(value[1])
                return self.element((a.payload, b.payload))
            if isinstance(value, Fraction):
                return self.element((self.base.coerce(value).payload, self.base._pzero()))
        raise UnsupportedRingError(f"cannot coerce {value!r} into {self}")

    # -- payload arithmetic ----------------------------------------------------

    def _pzero(self):
        if self.kind == ZLOC:
            return Fraction(0)
        if self.kind == QPOLY:
            return MPoly.zero(self.variables)
        return (self.base._pzero(), self.base._pzero())

    def _pfrom_int(self, n):
        if self.kind == ZLOC:
            return Fraction(n)
        if self.kind == QPOLY:
            return MPoly.const(self.variables, n)
        return (self.base._pfrom_int(n), self.base._pzero())

    def _padd(self, x, y):
        if self.kind == DUAL:
            return (self.base._padd(x[0], y[0]), self.base._padd(x[1], y[1]))
        return x + y

    def _psub(self, x, y):
        if self.kind == DUAL:
            return (self.base._psub(x[0], y[0]), self.base._psub(x[1], y[1]))
        return x - y

    def _pneg(self, x):
        if self.kind == DUAL:
            return (self.base._pneg(x[0]), self.base._pneg(x[1]))
        return -x

    def _pmul(self, x, y):
        if self.kind == DUAL:
            # eps^2 = 0: the cross term is dropped by construction
            a = self.base._pmul(x[0], y[0])
            b = self.base._padd(
                self.base._pmul(x[0], y[1]), self.base._pmul(x[1], y[0])
            )
            return (a, b)
        return x * y

    def _pscale(self, x, c):
        if self.kind == DUAL:
            return (self.base._pscale(x[0], c), self.base._pscale(x[1], c))
        return x * c

    def _pis_zero(self, x):
        if self.kind == DUAL:
            return self.base._pis_zero(x[0]) and self.base._pis_zero(x[1])
        return not x

    # -- ring-level operations ---------------------------------------------------

    def div_int(self, elem, n):
        """elem / n when the quotient stays in the ring."""
        if n == 0:
            raise ZeroDivisionError("division by zero")
        payload = self._pscale(elem.payload, Fraction(1, n))
        if not self.contains_payload(payload):
            raise ExactDivisionError(
                f"{elem} is not divisible by {n} in {self}"
            )
        return RingElement(self, payload)

    def try_invert(self, elem):
        """Multiplicative inverse inside the ring, or None."""
        if self.kind == ZLOC:
            q = elem.payload
            if not q:
                return None
            inv = 1 / q
            return RingElement(self, inv) if self.contains_payload(inv) else None
        if self.kind == QPOLY:
            c = elem.payload.constant()
            if elem.payload.terms and list(elem.payload.terms) == [
                (0,) * len(self.variables)
            ] and c:
                return RingElement(self, MPoly.const(self.variables, Fraction(1, 1) / c))
            return None
        a, b = elem.payload
        ia = self.base.try_invert(RingElement(self.base, a))
        if ia is None:
            return None
        ia = ia.payload
        nb = self.base._pneg(self.base._pmul(self.base._pmul(b, ia), ia))
        return RingElement(self, (ia, nb))

    def is_p_divisible(self, elem, p):
        """True iff elem = p*b for some b in the ring."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.kind == ZLOC:
            if self.inverted.inverts(p):
                return True
            return elem.payload.numerator % p == 0
        if self.kind == QPOLY:
            # p is a unit in a Q-algebra, so divisibility is automatic
            return True
        if self.kind == DUAL:
            a, b = elem.payload
            return self.base.is_p_divisible(
                RingElement(self.base, a), p
            ) and self.base.is_p_divisible(RingElement(self.base, b), p)
        raise UnsupportedRingError(f"p-divisibility unsupported on {self}")

    def in_ideal(self, elem, ideal):
        if isinstance(ideal, PrimeIdeal):
            return self.is_p_divisible(elem, ideal.p)
        if isinstance(ideal, EpsIdeal):
            if self.kind != DUAL:
                raise UnsupportedIdealError(f"(eps) is not an ideal of {self}")
            return self.base._pis_zero(elem.payload[0])
        raise UnsupportedIdealError(f"{ideal} unsupported on {self}")

    # -- text and JSON forms --------------------------------------------------------

    def format_payload(self, payload):
        if self.kind == ZLOC:
            return format_fraction(payload)
        if self.kind == QPOLY:
            return str(payload)
        a = self.base.format_payload(payload[0])
        b = payload[1]
        if self.base._pis_zero(b):
            return a
        neg = False
        if self.base.kind == ZLOC and b < 0:
            neg, b = True, -b
        bs = self.base.format_payload(b)
        return f"{a} {'-' if neg else '+'} {bs}*eps"

    def parse_payload(self, text):
        text = text.strip()
        if self.kind == ZLOC:
            return Fraction(text)
        if self.kind == QPOLY:
            return parse_poly(text, self.variables)
        if "eps" in text:
            head, _, tail = text.rpartition("eps")
            head = head.strip()
            sign = 1
            if head.endswith("*"):
                head = head[:-1]
            # split "a + b*" / "a - b*" / "b*" / ""
            a_txt, b_txt = "0", head.strip() or "1"
            for i in range(len(head) - 1, 0, -1):
                if head[i] in "+-" and head[i - 1] == " ":
                    a_txt = head[:i].strip()
                    sign = 1 if head[i] == "+" else -1
                    b_txt = head[i + 1 :].strip() or "1"
                    break
            a = self.base.parse_payload(a_txt)
            b = self.base._pscale(self.base.parse_payload(b_txt), sign)
            return (a, b)
        return (self.base.parse_payload(text), self.base._pzero())

    def to_json(self):
        if self.kind == ZLOC:
            return {"kind": ZLOC, "inverted": self.inverted.to_json()}
        if self.kind == QPOLY:
            return {"kind": QPOLY, "variables": list(self.variables)}
        return {"kind": DUAL, "base": self.base.to_json()}

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == ZLOC:
            return cls(ZLOC, inverted=PrimeSet.from_json(data["inverted"]))
        if kind == QPOLY:
            return cls(QPOLY, variables=data["variables"])
        if kind == DUAL:
            return cls(DUAL, base=cls.from_json(data["base"]))
        raise ValueError(f"unknown ring kind {kind!r}")


def format_fraction(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_ring(text):
    """Parse a ring name: Z, Q, Z[1/2,1/3], Z_(5), Q[y1,y2], dual(<ring>)."""
    text = text.strip()
    if text == "Z":
        return GroundRing.integers()
    if text == "Q":
        return GroundRing.rationals()
    if text.startswith("dual(") and text.endswith(")"):
        return GroundRing.dual(parse_ring(text[5:-1]))
    if text.startswith("Z_(") and text.endswith(")"):
        return GroundRing.p_local(int(text[3:-1]))
    if text.startswith("Z[") and text.endswith("]"):
        primes = []
        for part in text[2:-1].split(","):
            part = part.strip()
            if not part.startswith("1/"):
                raise ValueError(f"bad localization entry {part!r}")
            primes.append(int(part[2:]))
        return GroundRing.localized(primes)
    if text.startswith("Q[") and text.endswith("]"):
        names = tuple(v.strip() for v in text[2:-1].split(",") if v.strip())
        return GroundRing.rational_poly(names)
    raise ValueError(f"cannot parse ring {text!r}")


class RingElement:
    """An immutable element of a GroundRing."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def is_zero(self):
        return self.ring._pis_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"cannot combine elements of {self.ring} and {other.ring}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._padd(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._psub(self.payload, other.payload))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElement(self.ring, self.ring._pneg(self.payload))

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._pmul(self.payload, other.payload))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.ring.coerce(other)
            except (UnsupportedRingError, MembershipError):
                return False
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.payload == other.payload

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __str__(self):
        return self.ring.format_payload(self.payload)

    def __repr__(self):
        return f"<{self} in {self.ring}>"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def ring_arith(op, a, b):
    """Exact add/sub/mul of two elements of the same ring."""
    if a.ring != b.ring:
        raise RingMismatchError(f"operands live in {a.ring} and {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def is_p_divisible(a, p):
    """True iff a = p*b for some b in a's ring."""
    return a.ring.is_p_divisible(a, p)


class BinomialResult(tuple):
    """Value of a binomial symbol plus an in-ring flag."""

    __slots__ = ()

    def __new__(cls, value, in_ring):
        return super().__new__(cls, (value, in_ring))

    @property
    def value(self):
        return self[0]

    @property
    def in_ring(self):
        return self[1]


def binomial(a, n):
    """The binomial symbol a(a-1)...(a-n+1)/n!, computed in the fraction
    field, with a flag telling whether it lies in a's ring."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ring = a.ring
    ff = ring.fraction_field()
    x = ff.element(a.payload, check=False)
    prod = ff.one()
    for k in range(n):
        prod = prod * (x - ff.from_int(k))
    value = RingElement(ff, ff._pscale(prod.payload, Fraction(1, math.factorial(n))))
    return BinomialResult(value, ring.contains_payload(value.payload))


def binom_fraction(q, n):
    """Generalized binomial symbol C(q, n) for a Fraction or int."""
    q = Fraction(q)
    num = Fraction(1)
    for k in range(n):
        num *= q - k
    return num / math.factorial(n)


# ---------------------------------------------------------------------------
# ideal descriptors
# ---------------------------------------------------------------------------


class PrimeIdeal:
    """The ideal pR of a localization (or dual numbers over one)."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return f"({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.p == other.p


class XAdicIdeal:
    """The ideal (x^k) of a truncated polynomial or power series carrier."""

    __slots__ = ("k",)

    def __init__(self, k):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k

    def __repr__(self):
        return f"(x^{self.k})"

    def __eq__(self, other):
        return isinstance(other, XAdicIdeal) and self.k == other.k


class EpsIdeal:
    """The ideal (eps) of a dual-number ring."""

    __slots__ = ()

    def __repr__(self):
        return "(eps)"

    def __eq__(self, other):
        return isinstance(other, EpsIdeal)
