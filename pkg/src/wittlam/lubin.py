"""Commuting power series and the Hasse principle for Adams operations.

Given f and g with the same linear coefficient alpha (alpha neither 0 nor
a root of unity) and any target linear coefficient c, there is exactly
one h with h(0) = 0, h'(0) = c and h(g(x)) = f(h(x)); the degree-j
coefficient of h o g - f o h is (alpha^j - alpha) h_j plus terms in lower
coefficients, so h is found degree by degree, dividing by
(alpha^j - alpha).

The consequence for structures on R[[x]] over a domain R: a filtered ring
endomorphism commuting with one Adams operation psi^p commutes with all
of them, provided every linear coefficient satisfies the alpha
hypothesis.  hasse_check verifies commutation at a chosen prime and then
independently at every other window prime.
"""

from fractions import Fraction

from .errors import LubinHypothesisError, UnsupportedRingError
from .series import TruncSeries, compose, revert
from .structures import LambdaStructure


def _scalar_of(elem):
    """The Fraction behind an element of Z[S^-1] or a constant of Q[y..];
    None when the element is not scalar."""
    ring = elem.ring
    if ring.kind == "localized_integers":
        return elem.payload
    if ring.kind == "rational_poly":
        p = elem.payload
        if p.is_zero():
            return Fraction(0)
        if list(p.terms) == [(0,) * len(ring.variables)]:
            return Fraction(p.constant())
        return None
    return None


def check_alpha(alpha, trunc):
    """alpha must be neither 0 nor a root of unity.

    Over Q the roots of unity are exactly +-1, so the check is exact.
    Non-scalar alpha in a polynomial algebra would push the solver into
    rational-function coefficients, which this library does not
    represent.
    """
    a = _scalar_of(alpha)
    if a is None:
        raise UnsupportedRingError(
            "the commuting-series solver needs a scalar linear coefficient"
        )
    if a == 0:
        raise LubinHypothesisError("linear coefficient is 0")
    if a == 1 or a == -1:
        raise LubinHypothesisError(
            f"linear coefficient {a} is a root of unity"
        )
    return a


class CommutingProblem:
    """Data for the unique-conjugacy problem h o g = f o h."""

    __slots__ = ("f", "g", "alpha", "c")

    def __init__(self, f, g, c):
        f._check(g)
        if not f.constant_term().is_zero() or not g.constant_term().is_zero():
            raise LubinHypothesisError("f and g must vanish at 0")
        if f.linear_coeff() != g.linear_coeff():
            raise LubinHypothesisError(
                "f and g must share their linear coefficient"
            )
        check_alpha(f.linear_coeff(), f.trunc)
        self.f = f
        self.g = g
        self.alpha = f.linear_coeff()
        self.c = c


def lubin_solve(problem, trunc=None):
    """The unique h with h(0)=0, h'(0)=c and h(g(x)) = f(h(x)) mod x^{N+1}.

    Works over the fraction field of the coefficient ring: the division
    by (alpha^j - alpha) is a division by a nonzero rational scalar.
    """
    f, g, c = problem.f, problem.g, problem.c
    N = f.trunc if trunc is None else trunc
    ff_ring = f.ring.fraction_field()

    def lift(series):
        return TruncSeries(
            ff_ring,
            [ff_ring.element(cc.payload, check=False) for cc in series.coeffs],
            N,
            series.xfilt,
        )

    f = lift(f)
    g = lift(g)
    alpha = _scalar_of(f.linear_coeff())
    coeffs = [ff_ring.zero()] * (N + 1)
    if N >= 1:
        coeffs[1] = ff_ring.coerce(c)
    h = TruncSeries(ff_ring, coeffs, N, f.xfilt)
    for j in range(2, N + 1):
        defect = (compose(h, g) - compose(f, h))[j]
        denom = alpha ** j - alpha
        coeffs[j] = defect * (Fraction(-1) / denom)
        h = TruncSeries(ff_ring, coeffs, N, f.xfilt)
    return h


def conjugate_structure(S, phi):
    """The structure with Adams data phi o psi^p o phi^{-1}.

    phi must be a series with phi(0) = 0 and unit linear coefficient in
    the carrier's ground ring, so that its reversion stays integral.
    """
    if not S.carrier.is_series:
        raise UnsupportedRingError("conjugation needs a series carrier")
    phi_inv = revert(phi)
    adams = {
        p: compose(compose(phi, S.adams_series(p)), phi_inv) for p in S.primes
    }
    return LambdaStructure(S.carrier, S.primes, adams)


def random_unit_series(ring, trunc, seed=0, coeff_range=2, xfilt=1):
    """A pseudorandom series x + c_2 x^2 + ... with small integer c_k."""
    import random

    rng = random.Random(seed)
    coeffs = [0, 1] + [
        rng.randint(-coeff_range, coeff_range) for _ in range(trunc - 1)
    ]
    return TruncSeries(ring, coeffs, trunc, xfilt)


class HasseReport:
    """Per-prime commutation results for a candidate lambda-map."""

    def __init__(self, p0):
        self.p0 = p0
        self.results = {}
        self.hypothesis_failures = []

    def add(self, p, passed):
        self.results[p] = bool(passed)

    @property
    def passed_at_p0(self):
        return self.results.get(self.p0, False)

    @property
    def all_pass(self):
        return all(self.results.values())

    @property
    def theorem_instance_holds(self):
        """Pass at p0 must propagate to every window prime."""
        return (not self.passed_at_p0) or self.all_pass

    @property
    def ok(self):
        return not self.hypothesis_failures and self.passed_at_p0 and self.all_pass

    def lines(self):
        out = []
        for msg in self.hypothesis_failures:
            out.append(f"hypothesis violated: {msg}")
        for p in sorted(self.results):
            mark = "pass" if self.results[p] else "FAIL"
            tag = " (checked prime)" if p == self.p0 else ""
            out.append(f"{mark}  phi commutes with psi^{p}{tag}")
        if self.results:
            if self.passed_at_p0 and self.all_pass:
                out.append(
                    f"commutation at p0={self.p0} propagated to all window primes"
                )
            elif not self.passed_at_p0:
                out.append(f"not a lambda-map: fails at p0={self.p0}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def hasse_check(S1, S2, phi, p0):
    """Check phi o psi^{p0}_1 = psi^{p0}_2 o phi, then every other prime.

    Requires matching linear coefficients alpha_p for the two structures
    at every window prime, each neither 0 nor a root of unity; violations
    are reported, not guessed around.
    """
    report = HasseReport(p0)
    if S1.carrier != S2.carrier or S1.primes != S2.primes:
        report.hypothesis_failures.append("carriers or prime windows differ")
        return report
    if p0 not in S1.primes:
        report.hypothesis_failures.append(f"p0={p0} outside window")
        return report
    if not phi.constant_term().is_zero():
        report.hypothesis_failures.append("phi(0) != 0")
        return report
    for p in S1.primes:
        a1 = S1.adams_series(p).linear_coeff()
        a2 = S2.adams_series(p).linear_coeff()
        if a1 != a2:
            report.hypothesis_failures.append(
                f"linear coefficients differ at p={p}"
            )
            continue
        try:
            check_alpha(a1, S1.carrier.series_trunc)
        except (LubinHypothesisError, UnsupportedRingError) as exc:
            report.hypothesis_failures.append(f"p={p}: {exc}")
    if report.hypothesis_failures:
        return report
    for p in S1.primes:
        lhs = compose(phi, S1.adams_series(p))
        rhs = compose(S2.adams_series(p), phi)
        report.add(p, lhs == rhs)
    return report
