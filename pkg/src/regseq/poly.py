"""Exact polynomial arithmetic.

Three value types, all immutable and hashable:

* ``MultiPoly`` -- sparse multivariate polynomial over Fraction, stored as a
  map from exponent tuples to nonzero coefficients.
* ``UniPoly`` -- dense univariate polynomial over Fraction (coefficients
  low-to-high, trailing zeros stripped).
* ``CyclotomicElt`` -- element of Q(zeta_c), represented by its residue
  polynomial modulo the c-th cyclotomic polynomial.

No floating point anywhere; every operation is exact.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from itertools import combinations

RatLike = int | Fraction


def _frac(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse multivariate polynomial with a fixed number of variables.

    ``terms`` maps exponent tuples (length = arity) to nonzero Fraction
    coefficients; zero coefficients are never stored.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict[tuple[int, ...], RatLike] | None = None):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != arity:
                raise ValueError(f"exponent vector {exps} has wrong length for arity {arity}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _frac(coef)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity, {})

    @classmethod
    def constant(cls, c: RatLike, arity: int) -> "MultiPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, i: int, arity: int) -> "MultiPoly":
        """The i-th variable (0-based) as a polynomial."""
        if not 0 <= i < arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        exps = [0] * arity
        exps[i] = 1
        return cls(arity, {tuple(exps): 1})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int | None:
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded-lexicographic order (degree, then lex descending)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check_arity(self, other: "MultiPoly"):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} != {other.arity}")

    def __add__(self, other: "MultiPoly | RatLike") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.arity)
        self._check_arity(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly(self.arity, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | RatLike") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.arity)
        return self + (-other)

    def __mul__(self, other: "MultiPoly | RatLike") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            if c == 0:
                return MultiPoly.zero(self.arity)
            return MultiPoly(self.arity, {e: k * c for e, k in self.terms.items()})
        self._check_arity(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.arity, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: list) -> object:
        """Evaluate at a point whose entries support +, * and integer powers.

        Entries may be Fractions/ints or CyclotomicElt with a common
        conductor (mixing conductors raises).
        """
        if len(point) != self.arity:
            raise ValueError(f"point has length {len(point)}, expected {self.arity}")
        conductors = {v.conductor for v in point if isinstance(v, CyclotomicElt)}
        if len(conductors) > 1:
            raise ValueError(f"conductor mismatch in evaluation point: {sorted(conductors)}")
        if conductors:
            c = conductors.pop()
            point = [v if isinstance(v, CyclotomicElt) else CyclotomicElt.from_rational(v, c)
                     for v in point]
            acc = CyclotomicElt.zero(c)
        else:
            point = [_frac(v) for v in point]
            acc = Fraction(0)
        for exps, coef in self.terms.items():
            term = coef
            for v, e in zip(point, exps):
                if e:
                    term = term * v**e
            acc = acc + term
        return acc

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Plain-text form: ``c * x1^e1*...*xn^en`` terms joined by ' + '."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in self.sorted_terms():
            factors = [f"x{i + 1}^{e}" for i, e in enumerate(exps) if e]
            if factors:
                parts.append(f"{coef} * " + "*".join(factors))
            else:
                parts.append(str(coef))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.render()})"


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Fraction.

    Coefficients run from degree 0 upward; the leading coefficient is
    nonzero.  The zero polynomial has an empty coefficient tuple and
    ``degree() is None`` (a sentinel, never -1 arithmetic).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def x_power(cls, k: int, coef: RatLike = 1) -> "UniPoly":
        return cls((0,) * k + (coef,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly | RatLike") -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly | RatLike") -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        return self + (-other)

    def __mul__(self, other: "UniPoly | RatLike") -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = _frac(other)
            return UniPoly([k * c for k in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact rational polynomial division with remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if top == 0:
                continue
            q = top / lead
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= q * b
        return UniPoly(quot), UniPoly(rem)

    def divide_exact(self, other: "UniPoly") -> "UniPoly | None":
        """Quotient self/other when the division is exact, else None."""
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def shift(self, c: RatLike) -> "UniPoly":
        """Return the polynomial x -> self(x + c)."""
        c = _frac(c)
        if c == 0 or self.is_zero():
            return self
        d = len(self.coeffs) - 1
        cpow = [Fraction(1)]
        for _ in range(d):
            cpow.append(cpow[-1] * c)
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(i + 1):
                out[j] += a * math.comb(i, j) * cpow[i - j]
        return UniPoly(out)

    def evaluate(self, x: RatLike) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def render(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(str(c) if i == 0 else f"{c} * {var}^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.render('x')})"


def _integer_primitive(f: UniPoly) -> list[int]:
    """Scale f to integer coefficients with content 1 (sign of leading kept)."""
    den = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over the rationals.

    Uses a primitive pseudo-remainder sequence on integer scalings to keep
    intermediate coefficients small, then normalizes the result monic.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    a = _integer_primitive(f)
    b = _integer_primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while True:
        # pseudo-remainder of a by b (integer arithmetic throughout)
        da, db = len(a) - 1, len(b) - 1
        lead_b = b[-1]
        rem = [c * lead_b ** (da - db + 1) for c in a]
        for k in range(da - db, -1, -1):
            top = rem[k + db]
            if top == 0:
                continue
            q, r = divmod(top, lead_b)
            assert r == 0
            for j, bc in enumerate(b):
                rem[k + j] -= q * bc
            rem[k + db] = 0
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            return UniPoly(b).monic()
        cont = math.gcd(*rem)
        rem = [c // cont for c in rem]
        a, b = b, rem


def eisenstein_at(f: UniPoly, p: int) -> bool:
    """Eisenstein irreducibility criterion at the prime p.

    Requires integer coefficients and degree >= 1.  True iff p does not
    divide the leading coefficient, p divides every other coefficient, and
    p^2 does not divide the constant term.
    """
    if not f.is_integral():
        raise ValueError("Eisenstein test requires integer coefficients")
    d = f.degree()
    if d is None or d < 1:
        raise ValueError("Eisenstein test requires degree >= 1")
    cs = [int(c) for c in f.coeffs]
    if cs[-1] % p == 0:
        return False
    if any(c % p for c in cs[:-1]):
        return False
    return cs[0] % (p * p) != 0


# ---------------------------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(c: int) -> UniPoly:
    """The c-th cyclotomic polynomial, via x^c - 1 = prod_{d|c} Phi_d."""
    if c < 1:
        raise ValueError("conductor must be >= 1")
    if c == 1:
        return UniPoly((-1, 1))
    num = UniPoly((-1,) + (0,) * (c - 1) + (1,))  # x^c - 1
    for d in range(1, c):
        if c % d == 0:
            q = num.divide_exact(cyclotomic_polynomial(d))
            assert q is not None, "cyclotomic division must be exact"
            num = q
    return num


class CyclotomicElt:
    """Element of Q(zeta_c): a residue polynomial modulo Phi_c.

    ``coeffs`` has length deg Phi_c = phi(c); the generator is the residue
    class of x, a primitive c-th root of unity.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        phi = cyclotomic_polynomial(conductor)
        deg = phi.degree()
        cs = [_frac(v) for v in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod(cs, phi)
        cs += [Fraction(0)] * (deg - len(cs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElt is immutable")

    @classmethod
    def zero(cls, conductor: int) -> "CyclotomicElt":
        return cls(conductor, ())

    @classmethod
    def one(cls, conductor: int) -> "CyclotomicElt":
        return cls(conductor, (1,))

    @classmethod
    def from_rational(cls, value: RatLike, conductor: int) -> "CyclotomicElt":
        return cls(conductor, (value,))

    @classmethod
    def generator(cls, conductor: int) -> "CyclotomicElt":
        """A primitive conductor-th root of unity."""
        if conductor == 1:
            return cls.one(1)
        return cls(conductor, (0, 1))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def _check(self, other: "CyclotomicElt"):
        if self.conductor != other.conductor:
            raise ValueError(f"conductor mismatch: {self.conductor} != {other.conductor}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclotomicElt)
            and self.conductor == other.conductor
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CyclotomicElt(self.conductor, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicElt(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def _coerce(self, other) -> "CyclotomicElt":
        if isinstance(other, CyclotomicElt):
            return other
        return CyclotomicElt.from_rational(other, self.conductor)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElt(self.conductor, [a * other for a in self.coeffs])
        self._check(other)
        n1, n2 = len(self.coeffs), len(other.coeffs)
        prod = [Fraction(0)] * (n1 + n2 - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CyclotomicElt(self.conductor, prod)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int) -> "CyclotomicElt":
        if k < 0:
            raise ValueError("negative power")
        result = CyclotomicElt.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def to_conductor(self, m: int) -> "CyclotomicElt":
        """Embed into Q(zeta_m) for a multiple m of the conductor."""
        if m % self.conductor:
            raise ValueError(f"{m} is not a multiple of conductor {self.conductor}")
        step = m // self.conductor
        gen = CyclotomicElt.generator(m)
        acc = CyclotomicElt.zero(m)
        for i, a in enumerate(self.coeffs):
            if a:
                acc = acc + gen ** (i * step) * a
        return acc

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            terms.append(str(a) if i == 0 else f"{a}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc({self.conductor}: {body})"


def _reduce_mod(coeffs: list[Fraction], phi: UniPoly) -> list[Fraction]:
    """Remainder of a coefficient list modulo the monic polynomial phi."""
    deg = phi.degree()
    cs = list(coeffs)
    for k in range(len(cs) - 1, deg - 1, -1):
        top = cs[k]
        if top == 0:
            continue
        # subtract top * x^(k-deg) * phi  (phi is monic)
        for j, b in enumerate(phi.coeffs):
            cs[k - deg + j] -= top * b
    return cs[:deg]
