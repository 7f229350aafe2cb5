"""Decision engine for regularity of symmetric polynomial sequences.

A query is a :class:`DegreeSet` (family power|complete, arity n, n distinct
degrees).  The pipeline applies proven necessary-condition filters, exact
closed forms (n = 2, triples containing 1, sets containing {2, 3}), and
finally a rank test at the critical degree.

Certificates are one-sided by design: a full-rank computation modulo any
prime proves regularity over the rationals (a nonzero maximal minor mod p
lifts), while non-regularity is certified only by a failed proven filter, an
explicit witness that evaluates to zero, or an exact integer rank
deficiency.  A modular deficiency alone yields ProbablyNotRegular.

Two rank-test bases are available:

* ``monomial`` -- the 0/1 matrix whose rows are monomial multiples of the
  generators written in the degree-D monomial basis of the x-variables; full
  rank at the critical degree D = sum(degrees) - n + 1 is equivalent to
  regularity.
* ``symmetric`` (default) -- the same test transported to the invariant ring
  Q[e_1..e_n] with weights 1..n.  A symmetric sequence is regular in the
  x-variables iff its elementary-basis expression is regular in the weighted
  ring: the map x -> (e_1(x), ..., e_n(x)) is finite and surjective and both
  origins correspond, so the two zero sets vanish together.  A weighted
  quotient of Krull dimension >= 1 keeps nonzero graded pieces along all
  multiples of some weight i <= n, therefore vanishing of the quotient on n
  consecutive weighted degrees past the expected socle degree
  sum(degrees) - n(n+1)/2 is equivalent to regularity.  The matrices are
  orders of magnitude smaller, which is what makes the larger scans cheap.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import symfunc
from .arith import binomial
from .linalg import SparseIntMatrix, random_prime, rank_exact, rank_modular
from .poly import CyclotomicElt, MultiPoly, UniPoly, poly_gcd, eisenstein_at

POWER = "power"
COMPLETE = "complete"

REGULAR = "regular"
NOT_REGULAR = "not-regular"
PROBABLY_NOT_REGULAR = "probably-not-regular"


@dataclass(frozen=True)
class DegreeSet:
    """A regularity query: family, arity and the n generator degrees."""

    family: str
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.family not in (POWER, COMPLETE):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        degs = tuple(self.degrees)
        if len(degs) == 0:
            raise ValueError("degree set must be nonempty")
        if len(degs) != self.n:
            raise ValueError(f"expected {self.n} degrees, got {len(degs)}")
        if any(d < 1 for d in degs):
            raise ValueError("degrees must be positive")
        if len(set(degs)) != len(degs):
            raise ValueError("degrees must be distinct")
        if degs != tuple(sorted(degs)):
            object.__setattr__(self, "degrees", tuple(sorted(degs)))

    def generator(self, a: int) -> MultiPoly:
        """The degree-a generator polynomial of this family."""
        if self.family == POWER:
            return symfunc.power_sum(a, self.n)
        return symfunc.complete(a, self.n)

    def generator_e_expansion(self, a: int) -> dict[tuple[int, ...], int]:
        """Integer elementary-basis expansion of the degree-a generator."""
        if self.family == POWER:
            return symfunc.power_e_expansion(a, self.n)
        return symfunc.complete_e_expansion(a, self.n)


@dataclass(frozen=True)
class Witness:
    """An explicit nonzero common zero with cyclotomic coordinates."""

    conductor: int
    coords: tuple[CyclotomicElt, ...]

    def __post_init__(self):
        if all(c.is_zero() for c in self.coords):
            raise ValueError("witness must be a nonzero vector")
        for c in self.coords:
            if c.conductor != self.conductor:
                raise ValueError("witness coordinates must share the conductor")


@dataclass
class Verdict:
    """Certified answer for a DegreeSet query."""

    status: str
    method: str
    evidence: dict | None
    critical_degree: int
    rank: int | None = None
    expected_rank: int | None = None
    primes: tuple[int, ...] = ()
    elapsed_ms: float = 0.0
    witness: Witness | None = None

    @property
    def is_regular(self) -> bool:
        return self.status == REGULAR


# ---------------------------------------------------------------------------
# Normalization and closed forms
# ---------------------------------------------------------------------------


def normalize(ds: DegreeSet) -> tuple[int, DegreeSet]:
    """Divide power-sum degrees by their gcd: regularity is unchanged
    (d-th roots of a common zero give a common zero and conversely)."""
    if ds.family != POWER:
        raise ValueError("normalize applies to the power family only")
    d = math.gcd(*ds.degrees)
    if d == 1:
        return 1, ds
    return d, DegreeSet(POWER, ds.n, tuple(a // d for a in ds.degrees))


def critical_degree(ds: DegreeSet) -> int:
    """sum(degrees) - n + 1: the ideal of a regular sequence contains every
    form of this degree, and of no smaller degree for the full expected
    quotient."""
    return sum(ds.degrees) - ds.n + 1


def check_pair(ds: DegreeSet) -> Verdict:
    """Closed-form classification for n = 2.

    power: regular iff a/d or b/d is even (d = gcd); otherwise
    (1, zeta) with zeta^d = -1 is a common zero.
    complete: regular iff gcd(a+1, b+1) = 1; otherwise (x, 1) with x a
    primitive t-th root of unity (t the gcd) is a common zero.
    """
    if ds.n != 2:
        raise ValueError("check_pair requires n = 2")
    a, b = ds.degrees
    if ds.family == POWER:
        d = math.gcd(a, b)
        if (a // d) % 2 == 0 or (b // d) % 2 == 0:
            return Verdict(REGULAR, "closed-form", {"rule": "pair-parity"}, critical_degree(ds))
        conductor = 2 * d
        zeta = CyclotomicElt.generator(conductor)
        w = Witness(conductor, (CyclotomicElt.one(conductor), zeta))
        _assert_witness(w, ds)
        return Verdict(NOT_REGULAR, "closed-form", {"rule": "pair-parity"},
                        critical_degree(ds), witness=w)
    t = math.gcd(a + 1, b + 1)
    if t == 1:
        return Verdict(REGULAR, "closed-form", {"rule": "pair-gcd"}, critical_degree(ds))
    x = CyclotomicElt.generator(t)
    w = Witness(t, (x, CyclotomicElt.one(t)))
    _assert_witness(w, ds)
    return Verdict(NOT_REGULAR, "closed-form", {"rule": "pair-gcd"},
                    critical_degree(ds), witness=w)


# ---------------------------------------------------------------------------
# Necessary-condition filters (fail => certified not regular)
# ---------------------------------------------------------------------------


def factorial_filter(ds: DegreeSet) -> bool:
    """True (pass) iff n! divides the product of the degrees.

    Failure certifies non-regularity for any family of symmetric forms: the
    quotient of Q[e_1..e_n] by a regular sequence has Hilbert series
    prod (1-q^{d_i}) / (1-q^i), whose q -> 1 limit prod(d_i)/n! must be an
    integer.
    """
    prod = math.prod(ds.degrees)
    return prod % math.factorial(ds.n) == 0


def hilbert_integrality_filter(ds: DegreeSet) -> tuple[bool, UniPoly | None]:
    """Exact-division form of the same obstruction, strictly stronger.

    Returns (True, quotient polynomial) when
    prod (1 - q^{d_i}) / prod_{i<=n} (1 - q^i) is a polynomial, else
    (False, None), which certifies non-regularity.
    """
    num = UniPoly.one()
    for a in ds.degrees:
        num = num * (UniPoly.one() - UniPoly.x_power(a))
    den = UniPoly.one()
    for i in range(1, ds.n + 1):
        den = den * (UniPoly.one() - UniPoly.x_power(i))
    q = num.divide_exact(den)
    return (q is not None), q


def roots_of_unity_counts(ds: DegreeSet) -> dict[int, int]:
    """beta_c = #{a in A : c | a} for 2 <= c <= n."""
    return {c: sum(1 for a in ds.degrees if a % c == 0) for c in range(2, ds.n + 1)}


def roots_of_unity_filter(ds: DegreeSet) -> tuple[int, Witness | None] | None:
    """Power-sum filter: if beta_c < floor(n/c) for some 2 <= c <= n the
    sequence is not regular; returns (c, witness) on failure, None on pass.

    Witness: floor(n/c) blocks y_i * (1, u, ..., u^(c-1)) padded with zeros,
    u a primitive c-th root of unity.  Blocks kill every p_a with c not
    dividing a; the beta_c remaining equations impose sum_i y_i^a = 0, which
    has explicit solutions for beta_c <= 1 (the only cases arising for
    n <= 5).  Larger beta_c still certifies via the dimension count, just
    without a constructed point.
    """
    if ds.family != POWER:
        raise ValueError("roots_of_unity_filter applies to the power family only")
    n = ds.n
    for c in range(2, n + 1):
        beta = sum(1 for a in ds.degrees if a % c == 0)
        if beta >= n // c:
            continue
        witness = None
        q = n // c
        divisible = [a for a in ds.degrees if a % c == 0]
        if beta == 0:
            witness = _block_witness(ds, c, [(True, None)] + [(False, None)] * (q - 1))
        elif beta == 1:
            a0 = divisible[0]
            witness = _block_witness(ds, c, [(True, None), (True, 2 * a0)] +
                                      [(False, None)] * (q - 2))
        if witness is not None:
            _assert_witness(witness, ds)
        return (c, witness)
    return None


def _block_witness(ds: DegreeSet, c: int, blocks: list[tuple[bool, int | None]]) -> Witness:
    """Assemble a concatenated root-of-unity block witness.

    ``blocks`` lists (active, scale_conductor) per block of length c: an
    active block contributes s * (1, u, ..., u^(c-1)) where s = 1 when
    scale_conductor is None, else s is a primitive root of that conductor
    (used to solve y_1^a + y_2^a = 0 with s^a = -1).
    """
    n = ds.n
    conductor = c
    for active, sc in blocks:
        if active and sc:
            conductor = math.lcm(conductor, sc)
    u = CyclotomicElt.generator(c).to_conductor(conductor)
    coords: list[CyclotomicElt] = []
    for active, sc in blocks:
        if not active:
            continue
        s = CyclotomicElt.one(conductor) if sc is None \
            else CyclotomicElt.generator(sc).to_conductor(conductor)
        for i in range(c):
            coords.append(s * u**i)
    while len(coords) < n:
        coords.append(CyclotomicElt.zero(conductor))
    return Witness(conductor, tuple(coords))


def even_part_filter(ds: DegreeSet) -> Witness | None:
    """n = 4 power-sum filter from points (x, -x, y, -y).

    Such points kill every odd-degree power sum, and reduce even degrees to
    the two-variable problem for the even subset E.  If E/gcd(E) has no even
    element the two-variable system has the common zero (1, zeta) with
    zeta^gcd(E) = -1, giving a witness; returns it, or None when the filter
    passes.
    """
    if ds.family != POWER or ds.n != 4:
        raise ValueError("even_part_filter applies to power sums with n = 4")
    evens = [a for a in ds.degrees if a % 2 == 0]
    if evens:
        d = math.gcd(*evens)
        if any((a // d) % 2 == 0 for a in evens):
            return None
        conductor = 2 * d
    else:
        conductor = 2
    one = CyclotomicElt.one(conductor)
    zeta = CyclotomicElt.generator(conductor)
    w = Witness(conductor, (one, -one, zeta, -zeta))
    _assert_witness(w, ds)
    return w


def subset_125_filter(ds: DegreeSet) -> int | None:
    """n = 4 power-sum filter: {d, 2d, 5d} inside A forces non-regularity
    because p_{5d}(4) lies in the ideal (p_d(4), p_{2d}(4)), so the four
    generators cut out a variety of dimension >= 1.  Returns the offending d
    or None.
    """
    if ds.family != POWER or ds.n != 4:
        raise ValueError("subset_125_filter applies to power sums with n = 4")
    degs = set(ds.degrees)
    for d in sorted(degs):
        if 2 * d in degs and 5 * d in degs:
            return d
    return None


def h_gcd_filter(ds: DegreeSet) -> tuple[int, Witness] | None:
    """Complete-family filter: t = gcd of (a+1) over A exceeding 1 gives the
    common zero (x, 1, 0, ..., 0) with x a primitive t-th root of unity,
    since (x - 1) h_a(x, 1, 0, ...) = x^(a+1) - 1."""
    if ds.family != COMPLETE:
        raise ValueError("h_gcd_filter applies to the complete family only")
    t = math.gcd(*(a + 1 for a in ds.degrees))
    if t == 1:
        return None
    x = CyclotomicElt.generator(t)
    coords = [x, CyclotomicElt.one(t)] + [CyclotomicElt.zero(t)] * (ds.n - 2)
    w = Witness(t, tuple(coords))
    _assert_witness(w, ds)
    return (t, w)


def h_congruence_filter(ds: DegreeSet) -> tuple[int, Witness | None] | None:
    """Complete-family filter: if some t > 2 has a + 2 = 0 or 1 (mod t) for
    every a in A, then any three distinct t-th roots of unity (padded with
    zeros) form a common zero for n >= 3.

    The search stops at t = max(A) + 2: beyond it a + 2 is its own residue
    and is >= 3.
    """
    if ds.family != COMPLETE:
        raise ValueError("h_congruence_filter applies to the complete family only")
    for t in range(3, max(ds.degrees) + 3):
        if all((a + 2) % t in (0, 1) for a in ds.degrees):
            witness = None
            if ds.n >= 3:
                zeta = CyclotomicElt.generator(t)
                coords = [CyclotomicElt.one(t), zeta, zeta**2]
                coords += [CyclotomicElt.zero(t)] * (ds.n - 3)
                witness = Witness(t, tuple(coords))
                _assert_witness(witness, ds)
            return (t, witness)
    return None


# ---------------------------------------------------------------------------
# Degree matrices and rank tests
# ---------------------------------------------------------------------------


def monomials_of_degree(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the degree-d monomials in n variables, in
    graded-lex order (lex descending within the fixed degree)."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def build_degree_matrix(ds: DegreeSet, degree: int) -> SparseIntMatrix:
    """The 0/1 matrix of the degree-``degree`` piece of the ideal.

    Columns: monomials of that degree (graded-lex).  Rows: mu * g_a for each
    a in A and each monomial mu of degree D - a, grouped by generator.  The
    generators have 0/1 coefficients and distinct supports, so entries are
    0/1.  Generators with a > degree contribute no rows.
    """
    n = ds.n
    cols = {m: i for i, m in enumerate(monomials_of_degree(n, degree))}
    rows = []
    for a in ds.degrees:
        if a > degree:
            continue
        gen = ds.generator(a)
        for mu in monomials_of_degree(n, degree - a):
            row = []
            for exps, coef in gen.terms.items():
                target = tuple(m + e for m, e in zip(mu, exps))
                row.append((cols[target], int(coef)))
            rows.append(row)
    return SparseIntMatrix.from_rows(len(rows), len(cols), rows)


def weighted_monomials(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors (b_1..b_n) with sum(i b_i) = k, i.e. e-monomials of
    weighted degree k; deterministic order."""
    return sorted(symfunc.partitions_with_parts_at_most(k, n), reverse=True)


def build_symmetric_matrix(ds: DegreeSet, k: int) -> SparseIntMatrix:
    """Degree-k piece of the ideal inside the weighted ring Q[e_1..e_n].

    Columns: weighted e-monomials of degree k.  Rows: nu * G_a for each
    generator's integer e-basis expansion G_a and each e-monomial nu of
    weighted degree k - a.
    """
    n = ds.n
    cols = {m: i for i, m in enumerate(weighted_monomials(n, k))}
    rows = []
    for a in ds.degrees:
        if a > k:
            continue
        gen = ds.generator_e_expansion(a)
        for nu in weighted_monomials(n, k - a):
            row = []
            for exps, coef in gen.items():
                target = tuple(m + e for m, e in zip(nu, exps))
                row.append((cols[target], coef))
            rows.append(row)
    return SparseIntMatrix.from_rows(len(rows), len(cols), rows)


@dataclass
class RankOutcome:
    status: str
    rank: int
    expected_rank: int
    primes: tuple[int, ...]
    method: str


def _probe_degrees(ds: DegreeSet, basis: str) -> list[int]:
    if basis == "monomial":
        return [critical_degree(ds)]
    start = sum(ds.degrees) - ds.n * (ds.n + 1) // 2 + 1
    return list(range(start, start + ds.n))


def rank_probe(ds: DegreeSet, strategy: str = "fast", prime_count: int = 3,
               seed: int = 0, basis: str = "symmetric") -> RankOutcome:
    """Generic rank test.

    monomial basis: regular iff the degree matrix at the critical degree has
    full column rank.  symmetric basis: regular iff the weighted matrices at
    n consecutive degrees past the expected socle degree all have full
    column rank.  Full rank mod one prime certifies; deficiency escalates
    through ``prime_count`` primes and, in strict mode, to exact elimination.
    """
    if basis not in ("monomial", "symmetric"):
        raise ValueError(f"unknown basis {basis!r}")
    build = build_degree_matrix if basis == "monomial" else build_symmetric_matrix
    rng = random.Random((seed, ds.family, ds.n, ds.degrees, basis).__repr__())
    primes_used: list[int] = []
    total_rank = 0
    total_cols = 0
    for degree in _probe_degrees(ds, basis):
        matrix = build(ds, degree)
        total_cols += matrix.n_cols
        rank = None
        for _ in range(max(1, prime_count)):
            p = random_prime(rng)
            primes_used.append(p)
            rank = rank_modular(matrix, p)
            if rank == matrix.n_cols:
                break
        if rank == matrix.n_cols:
            total_rank += rank
            continue
        if strategy == "strict":
            exact = rank_exact(matrix)
            total_rank += exact
            if exact == matrix.n_cols:
                continue
            return RankOutcome(NOT_REGULAR, total_rank, total_cols,
                               tuple(primes_used), "rank-exact")
        total_rank += rank
        return RankOutcome(PROBABLY_NOT_REGULAR, total_rank, total_cols,
                           tuple(primes_used), "rank-modular")
    return RankOutcome(REGULAR, total_rank, total_cols, tuple(primes_used), "rank-modular")


# ---------------------------------------------------------------------------
# Triples containing 1: the gcd criterion
# ---------------------------------------------------------------------------


def f_pair_polynomial(b: int) -> UniPoly:
    """f_b(x) = 1 + x^b + (-1)^b (x+1)^b, the restriction of p_b(3) to the
    plane p_1 = 0 through the parametrization (x, 1, -1-x)."""
    if b < 1:
        raise ValueError("f_pair_polynomial requires b >= 1")
    sign = 1 if b % 2 == 0 else -1
    shifted = UniPoly((1, 1)) ** b
    return UniPoly((1,)) + UniPoly.x_power(b) + shifted * sign


def gcd_criterion_triple(a: int, b: int) -> bool:
    """Decide regularity of p_{1,a,b}(3) (with ab = 0 mod 6) via
    gcd(f_a, f_b) = 1.

    On p_1 = 0, nontrivial zeros normalize to (x, 1, -1-x), where p_a and
    p_b restrict to f_a and f_b; a common root is exactly a nontrivial
    common zero (the direction (1, 0, -1) is excluded because a and b are
    not both odd when ab is even).
    """
    if not (1 < a < b):
        raise ValueError("need 1 < a < b")
    if (a * b) % 6 != 0:
        raise ValueError("gcd criterion applies when ab = 0 (mod 6)")
    g = poly_gcd(f_pair_polynomial(a), f_pair_polynomial(b))
    return g.degree() == 0


def eisenstein_family_check(u: int, v: int) -> bool:
    """Eisenstein at p = 3 for f_b(x+1) with b = 3^u (3^v + 1), u >= 1,
    v >= 0; expected True for the whole family."""
    if u < 1 or v < 0:
        raise ValueError("need u >= 1 and v >= 0")
    b = 3**u * (3**v + 1)
    return eisenstein_at(f_pair_polynomial(b).shift(1), 3)


def verify_modulo1(degrees: tuple[int, int, int]) -> bool:
    """Check that the unimodular-zero candidates are killed.

    For gcd-1 triples with 3 | abc, the only candidate common zeros with
    equal coordinate absolute values are (up to scaling/permutation)
    (1, rho, rho^2) with rho a primitive cube root of unity; the generator
    whose degree is divisible by 3 evaluates there to exactly 3.
    """
    a, b, c = sorted(degrees)
    if math.gcd(a, b, c) != 1:
        raise ValueError("degrees must have gcd 1")
    if (a * b * c) % 3 != 0:
        raise ValueError("some degree must be divisible by 3")
    rho = CyclotomicElt.generator(3)
    point = [CyclotomicElt.one(3), rho, rho**2]
    for d in (a, b, c):
        if d % 3 == 0:
            val = symfunc.power_sum(d, 3).evaluate(point)
            return val.is_rational() and val.rational_value() == 3
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Witness verification, Hilbert functions, ideal membership
# ---------------------------------------------------------------------------


def witness_verify(w: Witness, ds: DegreeSet) -> bool:
    """True iff every generator evaluates to exact zero at the witness."""
    if len(w.coords) != ds.n:
        raise ValueError(f"witness arity {len(w.coords)} != n = {ds.n}")
    point = list(w.coords)
    for a in ds.degrees:
        value = ds.generator(a).evaluate(point)
        if not value.is_zero():
            return False
    return True


def _assert_witness(w: Witness, ds: DegreeSet):
    if not witness_verify(w, ds):
        raise AssertionError(f"constructed witness fails to vanish on {ds}")


def hilbert_function(ds: DegreeSet, k: int) -> int:
    """Dimension of the degree-k part of R/(generators):
    C(k+n-1, n-1) minus the exact rank of the degree-k ideal matrix."""
    if k < 0:
        raise ValueError("k must be >= 0")
    total = binomial(k + ds.n - 1, ds.n - 1)
    if k == 0:
        return 1
    matrix = build_degree_matrix(ds, k)
    if matrix.n_rows == 0:
        return total
    return total - rank_exact(matrix)


def is_symmetric(f: MultiPoly) -> bool:
    """Invariance under adjacent transpositions (hence all of S_n)."""
    for i in range(f.arity - 1):
        for exps, coef in f.terms.items():
            swapped = list(exps)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            if f.terms.get(tuple(swapped)) != coef:
                return False
    return True


def symmetric_in_e_basis(f: MultiPoly) -> dict[tuple[int, ...], Fraction]:
    """Elementary-basis expansion of a symmetric polynomial.

    Classical leading-term elimination: the graded-lex leading exponent of a
    symmetric polynomial is a partition lambda, and
    e_1^(l1-l2) e_2^(l2-l3) ... e_n^(ln) has the same leading term.
    """
    n = f.arity
    if not is_symmetric(f):
        raise ValueError("polynomial is not symmetric")
    e_cache: dict[tuple[int, ...], MultiPoly] = {}

    def e_monomial(exps: tuple[int, ...]) -> MultiPoly:
        if exps not in e_cache:
            acc = MultiPoly.constant(1, n)
            for i, b in enumerate(exps, start=1):
                for _ in range(b):
                    acc = acc * symfunc.elementary(i, n)
            e_cache[exps] = acc
        return e_cache[exps]

    result: dict[tuple[int, ...], Fraction] = {}
    residue = f
    while not residue.is_zero():
        lead_exps = max(residue.terms, key=lambda e: (sum(e), e))
        lead_coef = residue.terms[lead_exps]
        lam = tuple(sorted(lead_exps, reverse=True))
        if lam != lead_exps:
            raise AssertionError("leading exponent of a symmetric poly must be a partition")
        e_exps = tuple(lam[i] - (lam[i + 1] if i + 1 < n else 0) for i in range(n))
        result[e_exps] = lead_coef
        residue = residue - e_monomial(e_exps) * lead_coef
    return result


def ideal_membership(f: MultiPoly, degrees: list[int], family: str = POWER,
                     n: int | None = None) -> bool:
    """Exact test for f in the ideal generated by the listed family members.

    f must be homogeneous.  Symmetric f is transported to the weighted
    elementary basis (membership there is equivalent by averaging the
    coefficients of any x-space representation over the symmetric group);
    non-symmetric f is tested on the monomial-basis matrix.  Both routes
    compare exact ranks with and without f appended.
    """
    n = n if n is not None else f.arity
    if f.arity != n:
        raise ValueError("arity mismatch")
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    k = f.total_degree()
    if is_symmetric(f):
        cols = {m: i for i, m in enumerate(weighted_monomials(n, k))}
        rows = []
        for a in degrees:
            if a > k:
                continue
            gen = (symfunc.power_e_expansion(a, n) if family == POWER
                   else symfunc.complete_e_expansion(a, n))
            for nu in weighted_monomials(n, k - a):
                rows.append([(cols[tuple(m + e for m, e in zip(nu, exps))], c)
                             for exps, c in gen.items()])
        expansion = symmetric_in_e_basis(f)
        den = math.lcm(*(c.denominator for c in expansion.values()))
        f_row = [(cols[exps], int(c * den)) for exps, c in expansion.items()]
        base = SparseIntMatrix.from_rows(len(rows), len(cols), rows)
    else:
        cols = {m: i for i, m in enumerate(monomials_of_degree(n, k))}
        rows = []
        for a in degrees:
            if a > k:
                continue
            gen = symfunc.power_sum(a, n) if family == POWER else symfunc.complete(a, n)
            for mu in monomials_of_degree(n, k - a):
                rows.append([(cols[tuple(m + e for m, e in zip(mu, exps))], int(c))
                             for exps, c in gen.terms.items()])
        den = math.lcm(*(c.denominator for c in f.terms.values()))
        f_row = [(cols[exps], int(c * den)) for exps, c in f.terms.items()]
        base = SparseIntMatrix.from_rows(len(rows), len(cols), rows)
    r0 = rank_exact(base)
    r1 = rank_exact(base.append_row(f_row))
    return r0 == r1


# ---------------------------------------------------------------------------
# The pipeline
# ---------------------------------------------------------------------------


def is_regular(ds: DegreeSet, strategy: str = "fast", prime_count: int = 3,
               seed: int = 0, basis: str = "symmetric",
               use_closed_forms: bool = True) -> Verdict:
    """Full decision pipeline.

    normalize (power) -> proven filters in cost order -> closed forms
    (n <= 2, triples containing 1, sets containing {2, 3}) -> rank test at
    the critical degree.  ``use_closed_forms=False`` forces the rank test,
    which the agreement tests rely on.
    """
    if strategy not in ("fast", "strict"):
        raise ValueError(f"unknown strategy {strategy!r}")
    start = time.perf_counter()
    verdict = _decide(ds, strategy, prime_count, seed, basis, use_closed_forms)
    verdict.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return verdict


def _decide(ds: DegreeSet, strategy: str, prime_count: int, seed: int,
            basis: str, use_closed_forms: bool) -> Verdict:
    crit = critical_degree(ds)

    if ds.n == 1:
        # one power of one variable vanishes only at the origin
        return Verdict(REGULAR, "closed-form", {"rule": "single-variable"}, crit)

    work = ds
    norm_evidence: dict = {}
    if ds.family == POWER:
        d, work = normalize(ds)
        if d > 1:
            norm_evidence = {"normalized_by": d, "normalized_degrees": list(work.degrees)}

    if use_closed_forms and work.n == 2:
        v = check_pair(work)
        v.evidence = {**(v.evidence or {}), **norm_evidence}
        v.critical_degree = crit
        return v

    if not factorial_filter(work):
        return Verdict(NOT_REGULAR, "factorial-filter",
                        {"product": math.prod(work.degrees),
                         "factorial": math.factorial(work.n), **norm_evidence}, crit)

    if work.family == COMPLETE:
        hit = h_gcd_filter(work)
        if hit is not None:
            t, w = hit
            return Verdict(NOT_REGULAR, "h-gcd-filter", {"gcd": t}, crit, witness=w)
        hit = h_congruence_filter(work)
        if hit is not None:
            t, w = hit
            return Verdict(NOT_REGULAR, "h-congruence-filter", {"modulus": t}, crit, witness=w)

    ok, _quotient = hilbert_integrality_filter(work)
    if not ok:
        return Verdict(NOT_REGULAR, "hilbert-filter",
                        {"rule": "non-integral Hilbert series", **norm_evidence}, crit)

    if work.family == POWER:
        hit = roots_of_unity_filter(work)
        if hit is not None:
            c, w = hit
            return Verdict(NOT_REGULAR, "roots-of-unity-filter",
                            {"c": c, **norm_evidence}, crit, witness=w)
        if work.n == 4:
            w = even_part_filter(work)
            if w is not None:
                return Verdict(NOT_REGULAR, "even-part-filter", norm_evidence or None,
                                crit, witness=w)
            d125 = subset_125_filter(work)
            if d125 is not None:
                return Verdict(NOT_REGULAR, "subset-125-filter",
                                {"d": d125, "membership": "p_{5d} in (p_d, p_{2d})",
                                 **norm_evidence}, crit)

    if use_closed_forms and work.family == POWER and work.n == 3:
        degs = work.degrees
        if degs[0] == 1 and (degs[1] * degs[2]) % 6 == 0:
            regular = gcd_criterion_triple(degs[1], degs[2])
            status = REGULAR if regular else NOT_REGULAR
            return Verdict(status, "gcd-criterion",
                            {"pair": [degs[1], degs[2]], **norm_evidence}, crit)
        if degs[0] == 2 and degs[1] == 3:
            cd = symfunc.c_coefficient(degs[2])
            status = REGULAR if cd != 0 else NOT_REGULAR
            return Verdict(status, "closed-form",
                            {"rule": "contains-2-3", "c_d": str(cd), **norm_evidence}, crit)

    outcome = rank_probe(work, strategy, prime_count, seed, basis)
    return Verdict(outcome.status, outcome.method, norm_evidence or None, crit,
                    rank=outcome.rank, expected_rank=outcome.expected_rank,
                    primes=outcome.primes)


# ---------------------------------------------------------------------------
# Conjecture predictions (scan targets, never certificates)
# ---------------------------------------------------------------------------


def predicted_regular(ds: DegreeSet) -> bool | None:
    """The conjectured answer, when one exists for this family/arity.

    n=3 power (gcd-1 triples): regular iff 6 | abc.
    n=4 power (gcd-1 quadruples): regular iff (1) at least two degrees even,
    one divisible by 3, one by 4; (2) the even part E, divided by gcd(E),
    contains an even number; (3) no subset {d, 2d, 5d}.
    n=3 complete: regular iff 6 | abc, gcd of (a+1) terms is 1, and for
    every t > 2 some a + 2 is neither 0 nor 1 mod t.
    Returns None when no prediction is stated.
    """
    if ds.family == POWER:
        _, work = normalize(ds)
        if ds.n == 3:
            return math.prod(work.degrees) % 6 == 0
        if ds.n == 4:
            return n4_conditions(work) == (True, True, True)
        return None
    if ds.n == 3:
        return h3_conditions(ds) == (True, True, True)
    return None


def n4_conditions(ds: DegreeSet) -> tuple[bool, bool, bool]:
    """The three conjectured conditions for gcd-1 power quadruples."""
    degs = ds.degrees
    cond1 = (sum(1 for a in degs if a % 2 == 0) >= 2
             and any(a % 3 == 0 for a in degs)
             and any(a % 4 == 0 for a in degs))
    evens = [a for a in degs if a % 2 == 0]
    if evens:
        d = math.gcd(*evens)
        cond2 = any((a // d) % 2 == 0 for a in evens)
    else:
        cond2 = False
    cond3 = subset_125_filter(DegreeSet(POWER, 4, degs)) is None if len(degs) == 4 else True
    return (cond1, cond2, cond3)


def h3_conditions(ds: DegreeSet) -> tuple[bool, bool, bool]:
    """The three conjectured conditions for complete-family triples."""
    a, b, c = ds.degrees
    cond1 = (a * b * c) % 6 == 0
    cond2 = math.gcd(a + 1, b + 1, c + 1) == 1
    cond3 = all(any((x + 2) % t not in (0, 1) for x in ds.degrees)
                for t in range(3, max(ds.degrees) + 3))
    return (cond1, cond2, cond3)
