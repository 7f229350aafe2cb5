"""Exact integer/rational arithmetic helpers: p-adic valuations, base-p
carries and binomial coefficients.

Integers are plain Python ints (arbitrary precision); rationals are
``fractions.Fraction``, which is always stored in lowest terms with a
positive denominator.  The valuation of zero is ``PADIC_INFINITY`` so that
minimum-valuation scans can skip vanishing summands without special cases.
"""

from __future__ import annotations

import math
from fractions import Fraction

#: Valuation assigned to 0; compares greater than every finite valuation.
PADIC_INFINITY = math.inf

# Witnesses for deterministic Miller-Rabin, valid for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x: int | Fraction, p: int) -> int | float:
    """p-adic valuation of an integer or rational.

    Returns v(num) - v(den), or ``PADIC_INFINITY`` for x = 0.  Rejects
    non-prime p.
    """
    if p < 2 or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if x == 0:
        return PADIC_INFINITY
    if isinstance(x, Fraction):
        return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)
    return _int_valuation(int(x), p)


def digits_base_p(n: int, p: int) -> list[int]:
    """Base-p digits of n >= 0, least significant first ([] for 0)."""
    ds = []
    while n > 0:
        n, d = divmod(n, p)
        ds.append(d)
    return ds


def carries_base_p(m: int, n: int, p: int) -> int:
    """Number of carries when adding m and n in base-p positional notation."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if p < 2 or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    carries = 0
    carry = 0
    while m > 0 or n > 0 or carry:
        m, dm = divmod(m, p)
        n, dn = divmod(n, p)
        carry = 1 if dm + dn + carry >= p else 0
        carries += carry
        if m == 0 and n == 0 and carry == 0:
            break
    return carries


def binomial(m: int, n: int) -> int:
    """Exact binomial coefficient C(m, n); 0 for n < 0 or n > m."""
    if m < 0:
        raise ValueError("upper argument must be nonnegative")
    if n < 0 or n > m:
        return 0
    return math.comb(m, n)
