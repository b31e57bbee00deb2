"""Exact integer/rational utilities: lcm ranges, interval-product lcms, Pochhammer.

Everything here is plain ``int`` / ``fractions.Fraction`` arithmetic; the two
lcm quantities are the universal denominators used to clear the linear-form
coefficients downstream.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "primes_upto",
    "padic_valuation",
    "lcm_upto",
    "log_lcm_upto",
    "delta_lcm",
    "delta_lcm_clearing",
    "delta_lcm_bruteforce",
    "pochhammer",
]


def primes_upto(k: int) -> list[int]:
    """Primes <= k by sieve of Eratosthenes."""
    if k < 2:
        return []
    sieve = bytearray([1]) * (k + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(k) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, k + 1) if sieve[p]]


def padic_valuation(m: int, p: int) -> int:
    """Exponent of the prime p in m (m nonzero)."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def lcm_upto(k: int) -> int:
    """lcm(1, ..., k).  Exact; intended for desk-scale k (say k <= 10^4)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = 1
    for p in primes_upto(k):
        pe = p
        while pe * p <= k:
            pe *= p
        out *= pe
    return out


def log_lcm_upto(k: int) -> float:
    """log lcm(1..k) = sum over p <= k of floor(log k/log p) * log p.

    Chebyshev psi function; usable far beyond the exact-integer range.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    total = 0.0
    for p in primes_upto(k):
        e = 1
        pe = p
        while pe * p <= k:
            pe *= p
            e += 1
        total += e * math.log(p)
    return total


def _interval_elements(u: int, v: int) -> list[int]:
    return [m for m in range(u, v + 1) if m != 0]


@lru_cache(maxsize=None)
def delta_lcm(a: int, k: int) -> int:
    """lcm of |products| of a distinct nonzero integers from an integer
    interval of length <= k contained in [-k, k].

    Computed per prime p <= k as the maximum, over inclusion-maximal
    intervals [u, u+k], of the sum of the a largest p-adic valuations of the
    nonzero interval elements.  Maximal intervals suffice: enlarging the
    interval can only increase that maximum.  Returns 1 when no interval
    holds a distinct nonzero integers (empty lcm convention).
    """
    if a < 1 or k < 1:
        raise ValueError("a and k must be >= 1")
    out = 1
    for p in primes_upto(k):
        best = 0
        for u in range(-k, 1):
            vals = sorted(
                (padic_valuation(m, p) for m in _interval_elements(u, u + k)),
                reverse=True,
            )
            if len(vals) >= a:
                best = max(best, sum(vals[:a]))
        out *= p**best
    # No interval of length <= k in [-k, k] avoids 0, so each holds exactly k
    # nonzero integers; a > k means no product exists at all.
    if a > k:
        return 1
    return out


def delta_lcm_clearing(a: int, k: int) -> int:
    """Denominator-clearing variant: lcm of products of AT MOST a distinct
    nonzero integers from the same intervals, i.e. delta_lcm(min(a, k), k).

    The strict exactly-a quantity degenerates to 1 when a exceeds the number
    of nonzero integers an interval can hold, which would break the
    integrality guarantees at desk scale (large a, small k); the size and
    integrality proofs only ever clear products of at most a factors.
    """
    return delta_lcm(min(a, k), k)


def delta_lcm_bruteforce(a: int, k: int) -> int:
    """Oracle for delta_lcm: enumerate every interval and every a-subset."""
    from itertools import combinations

    if a < 1 or k < 1:
        raise ValueError("a and k must be >= 1")
    out = 1
    for u in range(-k, k + 1):
        for v in range(u, min(u + k, k) + 1):
            elems = _interval_elements(u, v)
            if len(elems) < a:
                continue
            for sub in combinations(elems, a):
                prod = 1
                for m in sub:
                    prod *= m
                out = math.lcm(out, abs(prod))
    return out


def pochhammer(x, j: int):
    """Rising factorial (x)_j = x(x+1)...(x+j-1); (x)_0 = 1.

    Works for int and Fraction arguments alike.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    out = Fraction(1) if isinstance(x, Fraction) else 1
    for s in range(j):
        out = out * (x + s)
    return out
