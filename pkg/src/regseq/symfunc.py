"""Symmetric polynomial generators and coefficient machinery.

Provides the classical families (power sums p_k, elementary e_k, complete
h_k, monomial orbit sums m_lambda), Newton-identity residuals, expansion of
p_k and h_k in the elementary basis, the reductions used to decide
regularity of triples containing 1 or {2, 3}, the closed-form coefficient
sequences a_m / f_m(x) / c_d, Gaussian binomials and partition counting.

Elementary-basis expressions live in a weighted polynomial ring where the
i-th variable stands for e_i and carries weight i; they always have integer
coefficients, which the internal cache exploits.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .arith import binomial
from .poly import MultiPoly, UniPoly

# ---------------------------------------------------------------------------
# Generators in the x-variables
# ---------------------------------------------------------------------------


def power_sum(k: int, n: int) -> MultiPoly:
    """p_k in n variables: x_1^k + ... + x_n^k."""
    if k < 1 or n < 1:
        raise ValueError("power_sum requires k >= 1 and n >= 1")
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = 1
    return MultiPoly(n, terms)


def elementary(k: int, n: int) -> MultiPoly:
    """e_k in n variables (e_0 = 1); requires 0 <= k <= n."""
    if not 0 <= k <= n:
        raise ValueError(f"elementary requires 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return MultiPoly.constant(1, n)
    terms = {}
    for subset in combinations(range(n), k):
        e = [0] * n
        for i in subset:
            e[i] = 1
        terms[tuple(e)] = 1
    return MultiPoly(n, terms)


def complete(k: int, n: int) -> MultiPoly:
    """h_k in n variables: sum of all degree-k monomials (h_0 = 1)."""
    if k < 0 or n < 1:
        raise ValueError("complete requires k >= 0 and n >= 1")
    if k == 0:
        return MultiPoly.constant(1, n)
    terms = {}
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = 1
    return MultiPoly(n, terms)


def monomial_sym(partition: tuple[int, ...], n: int) -> MultiPoly:
    """Orbit sum of x^lambda under permutations of the variables."""
    parts = tuple(partition)
    if any(p < 1 for p in parts):
        raise ValueError("partition parts must be positive")
    if list(parts) != sorted(parts, reverse=True):
        raise ValueError("partition must be weakly decreasing")
    if len(parts) > n:
        raise ValueError(f"partition has {len(parts)} parts, more than n={n}")
    padded = parts + (0,) * (n - len(parts))
    terms = {}
    for perm in set(permutations(padded)):
        terms[perm] = 1
    return MultiPoly(n, terms)


def newton_residual(n: int, h: int) -> MultiPoly:
    """sum_{k=0}^{n} (-1)^k e_{n-k} p_{k+h}, with p_0 = n and e_0 = 1.

    Newton's identity says this is the zero polynomial for every h >= 0.
    """
    if n < 1 or h < 0:
        raise ValueError("newton_residual requires n >= 1 and h >= 0")
    acc = MultiPoly.zero(n)
    for k in range(n + 1):
        pk = MultiPoly.constant(n, n) if k + h == 0 else power_sum(k + h, n)
        term = elementary(n - k, n) * pk
        acc = acc + (term if k % 2 == 0 else -term)
    return acc


# ---------------------------------------------------------------------------
# Elementary-basis expansions (weighted ring, integer coefficients)
# ---------------------------------------------------------------------------
#
# Exponent vectors (b_1, ..., b_n) stand for e_1^b1 * ... * e_n^bn and carry
# weighted degree sum(i * b_i).  Coefficient dicts map exponent tuples to
# Python ints.


def _shift_exp(exps: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Multiply an e-monomial by e_i (1-based index)."""
    out = list(exps)
    out[i - 1] += 1
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _power_e_table(m: int, n: int) -> tuple[dict, ...]:
    """Integer e-basis expansions of p_1..p_m in n variables.

    Newton recursion: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... with the
    convention p_0 = n; for k <= n the last term is (-1)^(k-1) k e_k.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    table: list[dict] = [{(0,) * n: n}]  # p_0 = n
    for k in range(1, m + 1):
        acc: dict = {}
        for i in range(1, min(k, n) + 1):
            sign = 1 if i % 2 == 1 else -1
            prev = table[k - i]
            if k - i == 0:
                # boundary term of the identity for k <= n: (-1)^(k-1) k e_k
                e = [0] * n
                e[i - 1] = 1
                key = tuple(e)
                acc[key] = acc.get(key, 0) + sign * i
                continue
            for exps, c in prev.items():
                key = _shift_exp(exps, i)
                v = acc.get(key, 0) + sign * c
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
        table.append(acc)
    return tuple(table)


@functools.lru_cache(maxsize=None)
def _complete_e_table(m: int, n: int) -> tuple[dict, ...]:
    """Integer e-basis expansions of h_0..h_m in n variables.

    From the generating identity sum_{i=0}^{min(k,n)} (-1)^i e_i h_{k-i} = 0
    for k >= 1: h_k = e_1 h_{k-1} - e_2 h_{k-2} + ...
    """
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    table: list[dict] = [{(0,) * n: 1}]  # h_0 = 1
    for k in range(1, m + 1):
        acc: dict = {}
        for i in range(1, min(k, n) + 1):
            sign = 1 if i % 2 == 1 else -1
            for exps, c in table[k - i].items():
                key = _shift_exp(exps, i)
                v = acc.get(key, 0) + sign * c
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
        table.append(acc)
    return tuple(table)


def power_e_expansion(m: int, n: int) -> dict[tuple[int, ...], int]:
    """Integer e-basis expansion of p_m(n) as an exponent-dict."""
    return dict(_power_e_table(m, n)[m])


def complete_e_expansion(m: int, n: int) -> dict[tuple[int, ...], int]:
    """Integer e-basis expansion of h_m(n) as an exponent-dict."""
    return dict(_complete_e_table(m, n)[m])


def power_in_e_basis(m: int, n: int) -> MultiPoly:
    """p_m(n) expressed in the elementary basis, as a MultiPoly whose i-th
    variable stands for e_i."""
    return MultiPoly(n, {e: Fraction(c) for e, c in power_e_expansion(m, n).items()})


def substitute_elementary(expr: MultiPoly, n: int) -> MultiPoly:
    """Substitute e_i -> elementary(i, n) into an e-basis expression."""
    if expr.arity != n:
        raise ValueError("e-basis expression arity must equal n")
    e_pows: list[list[MultiPoly]] = [[MultiPoly.constant(1, n)] for _ in range(n + 1)]
    acc = MultiPoly.zero(n)
    for exps, coef in expr.sorted_terms():
        term = MultiPoly.constant(coef, n)
        for i, b in enumerate(exps, start=1):
            if b == 0:
                continue
            pows = e_pows[i]
            while len(pows) <= b:
                pows.append(pows[-1] * elementary(i, n))
            term = term * pows[b]
        acc = acc + term
    return acc


def classify_mod_e1(t: int) -> tuple[bool, Fraction | None, int | None, int | None]:
    """Shape of p_t(3) modulo e_1.

    Sets e_1 = 0 in the e-basis expansion and reports whether a single
    monomial u * e_2^alpha * e_3^beta remains; returns
    (is_monomial, u, alpha, beta), with Nones when not a monomial.
    """
    if t < 2:
        raise ValueError("classify_mod_e1 requires t >= 2")
    reduced = {e: c for e, c in power_e_expansion(t, 3).items() if e[0] == 0}
    if len(reduced) != 1:
        return (False, None, None, None)
    ((_, b2, b3), c), = reduced.items()
    return (True, Fraction(c), b2, b3)


@dataclass(frozen=True)
class ReducedShape:
    """Single-monomial residue of p_m(3) modulo (p_1, p_6)."""

    coefficient: Fraction
    e2_power: int
    e3_power: int


def reduce_mod_p1_p6(m: int) -> ReducedShape:
    """Residue of p_m(3) modulo (p_1, p_6): a_m e_2^h (m = 2h) or
    a_m e_2^(h-1) e_3 (m = 2h+1).

    Computed by setting e_1 = 0 and folding e_3^2 -> (2/3) e_2^3 until the
    e_3-exponent is 0 or 1.  This is the independent cross-check for the
    closed-form a_coefficient.
    """
    if m < 1:
        raise ValueError("reduce_mod_p1_p6 requires m >= 1")
    folded: dict[tuple[int, int], Fraction] = {}
    for (b1, b2, b3), c in power_e_expansion(m, 3).items():
        if b1 != 0:
            continue
        j, r = divmod(b3, 2)
        key = (b2 + 3 * j, r)
        v = folded.get(key, Fraction(0)) + Fraction(c) * Fraction(2, 3) ** j
        if v:
            folded[key] = v
        else:
            folded.pop(key, None)
    if m % 2 == 0:
        shape = (m // 2, 0)
    else:
        shape = ((m - 3) // 2, 1)
    if not folded:
        return ReducedShape(Fraction(0), *shape)
    if len(folded) > 1:
        raise AssertionError(f"residue of p_{m} mod (p_1, p_6) is not a monomial: {folded}")
    (key, coef), = folded.items()
    if key != shape:
        raise AssertionError(f"unexpected residue shape {key} for m={m}, wanted {shape}")
    return ReducedShape(coef, *shape)


# ---------------------------------------------------------------------------
# Closed-form coefficients a_m, f_m(x), c_d
# ---------------------------------------------------------------------------


def a_coefficient(m: int) -> Fraction:
    """The coefficient a_m of the single-monomial residue of p_m(3) modulo
    (p_1, p_6), by its closed-form sum.

    For m = 2h:   m * sum_{b=0}^{floor(h/3)} (-1)^(h-b)/(h-b) C(h-b, 2b) (2/3)^b
    For m = 2h+1: -m * same sum with C(h-b, 2b+1).

    a_m is rational in general (a_8 = -10/3); only nonvanishing matters.
    """
    return f_polynomial(m).evaluate(Fraction(2, 3))


def f_polynomial(m: int) -> UniPoly:
    """The integer polynomial f_m(x) with a_m = f_m(2/3).

    Same sums as a_coefficient with x^b in place of (2/3)^b.  Integrality
    of every coefficient is verified before returning.
    """
    if m < 2:
        raise ValueError("f_polynomial requires m >= 2")
    h = m // 2
    odd = m % 2
    coeffs = []
    for b in range(h // 3 + 1):
        sign = -1 if (h - b) % 2 else 1
        c = Fraction(sign * m * binomial(h - b, 2 * b + odd), h - b)
        coeffs.append(-c if odd else c)
    f = UniPoly(coeffs)
    if not f.is_integral():
        raise AssertionError(f"f_{m} has a non-integer coefficient: {f}")
    return f


@functools.lru_cache(maxsize=1)
def _c_scaled_cache() -> list[int]:
    return [0, 6]  # index d -> 6^d * c_d; c_0 unused, c_1 = 1


def _c_scaled(d: int) -> int:
    """6^d * c_d as an integer (C_d = 6 C_{d-1} - 18 C_{d-2} + 36 C_{d-3})."""
    cache = _c_scaled_cache()
    while len(cache) <= d:
        k = len(cache)
        if k == 2 or k == 3:
            cache.append(0)
            continue
        cache.append(6 * cache[k - 1] - 18 * cache[k - 2] + 36 * cache[k - 3])
    return cache[d]


def c_coefficient(d: int) -> Fraction:
    """c_d with p_d(3) = c_d p_1^d modulo (p_2, p_3).

    Recurrence c_d = c_{d-1} - c_{d-2}/2 + c_{d-3}/6, c_1 = 1, c_2 = c_3 = 0;
    evaluated on the integer rescaling 6^d c_d for speed.
    """
    if d < 1:
        raise ValueError("c_coefficient requires d >= 1")
    return Fraction(_c_scaled(d), 6**d)


def reduce_mod_p2_p3(d: int) -> Fraction:
    """Coefficient of p_1^d in the residue of p_d(3) modulo (p_2, p_3).

    Substitutes e_2 -> e_1^2/2, e_3 -> e_1^3/6 into the e-basis expansion of
    p_d(3); the result must be a multiple of e_1^d.  Independent cross-check
    for c_coefficient.
    """
    acc = Fraction(0)
    for (b1, b2, b3), c in power_e_expansion(d, 3).items():
        acc += Fraction(c) * Fraction(1, 2) ** b2 * Fraction(1, 6) ** b3
    return acc


@dataclass(frozen=True)
class GrowthReport:
    """Numeric root isolation for the recurrence c_d = alpha^d + 2 Re beta^d."""

    alpha: float
    beta_abs: float
    ratio_fourth: float          # (alpha/|beta|)^4, around 2.17
    dominance_ok: bool           # alpha^d > 2 |beta|^d for 4 <= d <= d_max
    positivity_ok: bool          # exact: c_d > 0 for 3 < d <= d_max
    d_max: int


def c_growth_check(d_max: int) -> GrowthReport:
    """Check the growth structure of c_d.

    Isolates the roots of x^3 - x^2 + x/2 - 1/6 numerically (the real root
    alpha in (0,1) and a complex pair beta); verifies (alpha/|beta|)^4 is
    about 2.17 and that alpha^d > 2 |beta|^d on 4..d_max (via logarithms, so
    no underflow).  Exact positivity of c_d is confirmed independently
    through the integer recurrence.
    """
    if d_max < 4:
        raise ValueError("c_growth_check requires d_max >= 4")
    roots = np.roots([1.0, -1.0, 0.5, -1.0 / 6.0])
    real = [r.real for r in roots if abs(r.imag) < 1e-9]
    cplx = [r for r in roots if abs(r.imag) >= 1e-9]
    if len(real) != 1 or len(cplx) != 2:
        raise AssertionError(f"unexpected root structure: {roots}")
    alpha = real[0]
    beta_abs = abs(cplx[0])
    ratio4 = (alpha / beta_abs) ** 4
    # alpha^d > 2 |beta|^d  <=>  d log(alpha/|beta|) > log 2
    log_ratio = math.log(alpha / beta_abs)
    dominance = all(d * log_ratio > math.log(2.0) for d in range(4, d_max + 1))
    positivity = all(_c_scaled(d) > 0 for d in range(4, d_max + 1))
    return GrowthReport(alpha, beta_abs, ratio4, dominance, positivity, d_max)


# ---------------------------------------------------------------------------
# Gaussian binomials and partitions
# ---------------------------------------------------------------------------


def gaussian_binomial(d: int, n: int) -> UniPoly:
    """The q-binomial coefficient [n+d choose n]_q as a polynomial in q.

    Computed as prod_{i=1}^{n} (1 - q^(d+i)) / (1 - q^i) with exact
    divisions; a non-exact division is a defect, not a caller error.
    """
    if d < 0 or n < 0:
        raise ValueError("gaussian_binomial requires d, n >= 0")
    num = UniPoly.one()
    den = UniPoly.one()
    for i in range(1, n + 1):
        num = num * (UniPoly.one() - UniPoly.x_power(d + i))
        den = den * (UniPoly.one() - UniPoly.x_power(i))
    q = num.divide_exact(den)
    if q is None:
        raise AssertionError(f"gaussian_binomial({d}, {n}) division was not exact")
    return q


@functools.lru_cache(maxsize=None)
def _bounded_partitions(rem: int, parts_left: int, max_part: int) -> int:
    if rem == 0:
        return 1
    if parts_left == 0 or max_part == 0:
        return 0
    total = 0
    for first in range(min(rem, max_part), 0, -1):
        total += _bounded_partitions(rem - first, parts_left - 1, first)
    return total


def partition_count(k: int, n: int, d: int) -> int:
    """Number of partitions of k with at most n parts, each part <= d.

    Direct enumeration, kept independent of gaussian_binomial so it can act
    as an oracle for it.
    """
    if k < 0:
        return 0
    return _bounded_partitions(k, n, d)


def partitions_with_parts_at_most(k: int, n: int):
    """Yield all partitions of k into parts of size at most n, as exponent
    tuples (b_1, ..., b_n) with sum(i * b_i) = k."""
    def rec(rem: int, part: int, acc: list[int]):
        if part == 0:
            if rem == 0:
                yield tuple(acc)
            return
        for cnt in range(rem // part, -1, -1):
            acc[part - 1] = cnt
            yield from rec(rem - cnt * part, part - 1, acc)
        acc[part - 1] = 0

    if k < 0:
        return
    yield from rec(k, n, [0] * n)
