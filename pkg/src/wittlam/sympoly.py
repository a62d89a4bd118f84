"""Multivariate polynomial engine and symmetric-function machinery.

The centrepiece is the computation of the universal polynomials P_n and
P_{m,n} that govern products and compositions of lambda-operations:

  * P_n(a_1..a_n; b_1..b_n) is obtained by expanding e_n of the n^2
    pairwise products x_i*y_j and rewriting the result in the elementary
    symmetric polynomials of the x's (-> a's) and of the y's (-> b's).
  * P_{m,n}(a_1..a_{mn}) is the coefficient of t^m in the product of
    (1 + t*prod_{i in S} x_i) over all n-element subsets S of {1..mn},
    rewritten in e_1..e_{mn}.

Both have integer coefficients; this is asserted whenever one is cached.
Polynomials are sparse dicts from exponent tuples to int/Fraction
coefficients; the term-level loops are delegated to the kernel module
(compiled extension when built, pure Python otherwise).
"""

import random
import threading
from fractions import Fraction

from . import kernel
from .errors import BoundExceededError, IntegralityError, SymmetryError

DEFAULT_PCOMP_BOUND = 6


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(
                        f"exponent {e} does not match {n} variables"
                    )
                c = _norm_coeff(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        p = cls(variables)
        c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if c:
            p.terms[(0,) * len(variables)] = c
        return p

    @classmethod
    def one(cls, variables):
        return cls.const(variables, 1)

    @classmethod
    def gen(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_integral(self):
        return all(isinstance(c, int) for c in self.terms.values())

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def coeff(self, expo):
        return self.terms.get(tuple(expo), 0)

    def constant(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(
                    f"variable mismatch: {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        kernel.add_into(out, other.terms)
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        kernel.add_into(out, other.terms, -1)
        return MPoly(self.vars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MPoly(self.vars, kernel.scaled(self.terms, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.vars, kernel.scaled(self.terms, other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MPoly(self.vars, kernel.mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return MPoly(self.vars, kernel.power(self.terms, k, len(self.vars)))

    def scalar_div(self, n):
        """Divide every coefficient by the nonzero scalar n."""
        inv = Fraction(1, 1) / Fraction(n)
        return MPoly(self.vars, {e: _norm_coeff(c * inv) for e, c in self.terms.items()})

    # -- structure -------------------------------------------------------

    def rename(self, mapping):
        """New polynomial with variables renamed via the mapping."""
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(newvars)) != len(newvars):
            raise ValueError("renaming collides variable names")
        return MPoly(newvars, dict(self.terms))

    def reorder(self, variables):
        """Same polynomial over a permutation of its variable list."""
        variables = tuple(variables)
        if sorted(variables) != sorted(self.vars):
            raise ValueError("reorder must permute the existing variables")
        pos = [self.vars.index(v) for v in variables]
        terms = {tuple(e[i] for i in pos): c for e, c in self.terms.items()}
        return MPoly(variables, terms)

    def swap_positions(self, i, j):
        out = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            out[tuple(le)] = c
        return MPoly(self.vars, out)

    def set_vars(self, scalars):
        """Partially substitute scalar values for some variables."""
        keep = [i for i, v in enumerate(self.vars) if v not in scalars]
        vals = {i: Fraction(scalars[v]) for i, v in enumerate(self.vars) if v in scalars}
        out = {}
        for e, c in self.terms.items():
            for i, val in vals.items():
                if e[i]:
                    c = c * val ** e[i]
            if not c:
                continue
            key = tuple(e[i] for i in keep)
            prev = out.get(key, 0)
            s = prev + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return MPoly(tuple(self.vars[i] for i in keep), out)

    def evaluate(self, values, one):
        """Evaluate in any commutative ring.

        `values` maps every variable name to a ring element; `one` is the
        ring's multiplicative identity (used for the constant term and as
        base of the power cache).
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"no values for variables {missing}")
        powcache = {}

        def vpow(i, k):
            key = (i, k)
            got = powcache.get(key)
            if got is None:
                got = values[self.vars[i]] ** k
                powcache[key] = got
            return got

        total = None
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = term * vpow(i, k)
            term = term * c
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    # -- text form ---------------------------------------------------------

    def __str__(self):
        return format_terms(self.terms, self.vars)

    def __repr__(self):
        return f"MPoly({self.vars}, {self})"


def format_terms(terms, variables):
    """Canonical text form: terms sorted lexicographically, leading first."""
    if not terms:
        return "0"
    bits = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        factors = []
        for v, k in zip(variables, e):
            if k == 1:
                factors.append(v)
            elif k:
                factors.append(f"{v}^{k}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)


def parse_poly(text, variables):
    """Parse the canonical text form back into an MPoly.

    Accepts sums of terms like ``3*a1^2*b2``, ``-a1``, ``5/6``.
    """
    variables = tuple(variables)
    text = text.strip()
    if text in ("0", ""):
        return MPoly.zero(variables)
    text = text.replace("- ", "+-").replace("+ ", "+")
    if text.startswith("-"):
        text = "-" + text[1:].lstrip()
    chunks = [t for t in text.split("+") if t.strip()]
    total = MPoly.zero(variables)
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        coeff = Fraction(1)
        expo = [0] * len(variables)
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, k = factor.partition("^")
                k = int(k)
            else:
                name, k = factor, 1
            expo[variables.index(name)] += k
        total = total + MPoly(variables, {tuple(expo): sign * coeff})
    return total


# ---------------------------------------------------------------------------
# elementary symmetric polynomials
# ---------------------------------------------------------------------------

_esym_lock = threading.Lock()
_esym_cache = {}


def _esym_positional(m, k):
    """e_k in m anonymous variables as a term dict (cached)."""
    if not 0 <= k <= m:
        raise ValueError(f"e_{k} undefined in {m} variables")
    key = (m, k)
    with _esym_lock:
        got = _esym_cache.get(key)
    if got is not None:
        return got
    # levels[j] accumulates e_j over the first i variables
    levels = [{(0,) * m: 1}] + [{} for _ in range(k)]
    for i in range(m):
        unit = [0] * m
        unit[i] = 1
        unit = tuple(unit)
        for j in range(min(i + 1, k), 0, -1):
            kernel.add_into(levels[j], kernel.mul_monomial(levels[j - 1], unit, 1))
    with _esym_lock:
        for j, lv in enumerate(levels):
            _esym_cache.setdefault((m, j), lv)
        return _esym_cache[key]


def elementary_symmetric(k, variables):
    """The elementary symmetric polynomial e_k in the named variables."""
    variables = tuple(variables)
    return MPoly(variables, dict(_esym_positional(len(variables), k)))


_eprod_lock = threading.Lock()
_eprod_cache = {}


def _eprod_expansion(m, mu):
    """Expansion of prod_i e_i^{mu_i} in m variables (cached term dict)."""
    key = (m, mu)
    with _eprod_lock:
        got = _eprod_cache.get(key)
    if got is not None:
        return got
    j = max((i for i, v in enumerate(mu) if v), default=-1)
    if j < 0:
        out = {(0,) * m: 1}
    else:
        prev = list(mu)
        prev[j] -= 1
        prev = _eprod_expansion(m, tuple(prev))
        out = kernel.mul(prev, _esym_positional(m, j + 1))
    with _eprod_lock:
        return _eprod_cache.setdefault(key, out)


def is_symmetric(f, sym_vars=None, samples=20, seed=0):
    """Check invariance of f under permutations of sym_vars.

    Up to 8 variables this checks all adjacent transpositions, which is a
    complete test; beyond that a fixed pseudorandom sample of
    transpositions is used.
    """
    sym_vars = tuple(sym_vars) if sym_vars is not None else f.vars
    pos = [f.vars.index(v) for v in sym_vars]
    k = len(pos)
    if k <= 1:
        return True
    if k <= 8:
        pairs = [(pos[i], pos[i + 1]) for i in range(k - 1)]
    else:
        rng = random.Random(seed)
        pairs = [tuple(sorted(rng.sample(pos, 2))) for _ in range(samples)]
    return all(f.swap_positions(i, j) == f for i, j in pairs)


def express_in_elementary(f, sym_vars=None, e_names=None, check=True):
    """Rewrite f in the elementary symmetric polynomials of sym_vars.

    Returns g with g(e_1,...,e_k, <inert vars>) = f; g is unique by the
    fundamental theorem of symmetric polynomials.  Variables of f outside
    sym_vars are carried through untouched ("inert").  The reduction is
    the classical one: repeatedly cancel the lex-leading monomial, whose
    exponent is weakly decreasing by symmetry, against the matching
    product of elementary symmetric polynomials.
    """
    sym_vars = tuple(sym_vars) if sym_vars is not None else f.vars
    k = len(sym_vars)
    if e_names is None:
        e_names = tuple(f"e{i}" for i in range(1, k + 1))
    else:
        e_names = tuple(e_names)
        if len(e_names) != k:
            raise ValueError("need one output name per symmetric variable")
    pos = [f.vars.index(v) for v in sym_vars]
    inert_pos = [i for i in range(len(f.vars)) if i not in pos]
    inert_names = tuple(f.vars[i] for i in inert_pos)
    if set(e_names) & set(inert_names):
        raise ValueError("output names collide with inert variables")
    if check and not is_symmetric(f, sym_vars):
        raise SymmetryError(
            f"polynomial is not symmetric in {sym_vars}"
        )

    slices = {}
    for e, c in f.terms.items():
        key = tuple(e[i] for i in inert_pos)
        slices.setdefault(key, {})[tuple(e[i] for i in pos)] = c

    out = {}
    for inert_expo, work in slices.items():
        while work:
            alpha = max(work)
            if any(alpha[i] < alpha[i + 1] for i in range(k - 1)):
                raise SymmetryError(
                    "reduction hit a non-dominant leading term; "
                    f"input not symmetric in {sym_vars}"
                )
            c = work[alpha]
            mu = tuple(
                alpha[i] - (alpha[i + 1] if i + 1 < k else 0) for i in range(k)
            )
            out[mu + inert_expo] = c
            kernel.add_into(work, _eprod_expansion(k, mu), -c)
    return MPoly(e_names + inert_names, out)


# ---------------------------------------------------------------------------
# universal polynomials
# ---------------------------------------------------------------------------


class UniversalPolyCache:
    """Thread-safe memo table for P_n and P_{m,n}."""

    def __init__(self):
        self._lock = threading.Lock()
        self.P = {}
        self.Pcomp = {}

    def get_P(self, n):
        with self._lock:
            return self.P.get(n)

    def put_P(self, n, poly):
        if not poly.is_integral():
            raise IntegralityError(f"P_{n} has a non-integer coefficient")
        with self._lock:
            return self.P.setdefault(n, poly)

    def get_Pcomp(self, m, n):
        with self._lock:
            return self.Pcomp.get((m, n))

    def put_Pcomp(self, m, n, poly):
        if not poly.is_integral():
            raise IntegralityError(f"P_({m},{n}) has a non-integer coefficient")
        with self._lock:
            return self.Pcomp.setdefault((m, n), poly)

    def clear(self):
        with self._lock:
            self.P.clear()
            self.Pcomp.clear()


GLOBAL_CACHE = UniversalPolyCache()


def _avars(n):
    return tuple(f"a{i}" for i in range(1, n + 1))


def _bvars(n):
    return tuple(f"b{i}" for i in range(1, n + 1))


def universal_P(n, cache=None):
    """P_n(a_1..a_n; b_1..b_n), the lambda-ring product polynomial.

    Computed by expanding e_n of the grid products x_i*y_j and rewriting
    in the two alphabets' elementary symmetric polynomials.  The y-side
    rewriting happens on the fly: the row identity
    prod_j (1 + x_i y_j t) = sum_k x_i^k e_k(y) t^k lets the expansion be
    accumulated directly over monomials in x_1..x_n and b_k = e_k(y).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cache = cache or GLOBAL_CACHE
    got = cache.get_P(n)
    if got is not None:
        return got

    nv = 2 * n  # positions 0..n-1 hold x_i, positions n..2n-1 hold b_k
    levels = [{(0,) * nv: 1}] + [{} for _ in range(n)]
    for i in range(n):  # row x_i
        contrib = []
        for k in range(1, n + 1):
            unit = [0] * nv
            unit[i] = k
            unit[n + k - 1] = 1
            contrib.append(tuple(unit))
        for m in range(n, 0, -1):
            for k in range(1, m + 1):
                kernel.add_into(
                    levels[m], kernel.mul_monomial(levels[m - k], contrib[k - 1], 1)
                )
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    F = MPoly(xs + _bvars(n), levels[n])
    g = express_in_elementary(F, sym_vars=xs, e_names=_avars(n))
    g = g.reorder(_avars(n) + _bvars(n))
    return cache.put_P(n, g)


def universal_Pcomp(m, n, bound=DEFAULT_PCOMP_BOUND, cache=None):
    """P_{m,n}(a_1..a_{mn}), the lambda-ring composition polynomial.

    This is e_m of the C(mn, n) products x_S over n-element subsets S,
    expressed in e_1..e_{mn}.  Rather than expanding that product
    directly, the power sums of the x_S are computed first,
    p_i = e_n(x_1^i, ..., x_K^i), rewritten in the e-basis, and Newton's
    identity j*e_j = sum (-1)^{i-1} e_{j-i} p_i then builds e_m of the
    subset products entirely inside Z[a_1..a_K].
    """
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    K = m * n
    if K > bound:
        raise BoundExceededError(
            f"P_({m},{n}) needs m*n = {K} > configured bound {bound}"
        )
    cache = cache or GLOBAL_CACHE
    got = cache.get_Pcomp(m, n)
    if got is not None:
        return got

    xs = tuple(f"x{i}" for i in range(1, K + 1))
    av = _avars(K)
    psums = []
    for i in range(1, m + 1):
        base = _esym_positional(K, n)
        powered = {tuple(v * i for v in e): c for e, c in base.items()}
        psums.append(
            express_in_elementary(MPoly(xs, powered), e_names=av, check=False)
        )
    E = [MPoly.one(av)]
    for j in range(1, m + 1):
        acc = MPoly.zero(av)
        for i in range(1, j + 1):
            term = E[j - i] * psums[i - 1]
            acc = acc + term if i % 2 else acc - term
        Ej = acc.scalar_div(j)
        if not Ej.is_integral():
            raise IntegralityError(f"e_{j} of subset products is non-integral")
        E.append(Ej)
    poly = E[m]
    # sanity anchors: lambda^1 lambda^n = lambda^n and lambda^m lambda^1 = lambda^m
    if m == 1 or n == 1:
        expect = MPoly.gen(av, f"a{max(m, n)}")
        if poly != expect:
            raise IntegralityError(f"P_({m},{n}) failed its identity anchor")
    return cache.put_Pcomp(m, n, poly)
