"""Composition sums and the explicit coefficients of the derivation recurrences.

The scalar workhorse is

    phi_sum(l, k, x) = sum over compositions (h_0,...,h_l) of k in positive
    integers of the polynomial  prod_{m=1..k-1, m not a partial sum} (x+1-m),

computed two ways: a streaming enumeration over compositions (the definition)
and a dynamic program over the shift identity

    phi_sum(l, k+1, x) = (x-k+1) phi_sum(l, k, x) + phi_sum(l-1, k, x),

which is what makes the table usable at large k.  The recurrence-defined
polynomial families (the independent oracle for everything here) live at the
bottom of the module.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .arith import pochhammer
from .polynomials import LaurentPoly, step_cleared, step_cleared_bar, step_ordinary

__all__ = [
    "enumerate_compositions",
    "phi_of_composition",
    "phi_sum_enumerated",
    "phi_sum",
    "theta",
    "theta0",
    "theta0bar",
    "ThetaTable",
    "p_family_by_recurrence",
    "p0_families",
]


def enumerate_compositions(l: int, k: int) -> Iterator[tuple[int, ...]]:
    """Stream the (l+1)-tuples of positive integers summing to k, in
    lexicographic order; empty unless 0 <= l <= k-1."""
    if l < 0 or k < 1 or l > k - 1:
        return
    if l == 0:
        yield (k,)
        return
    for first in range(1, k - l + 1):
        for rest in enumerate_compositions(l - 1, k - first):
            yield (first,) + rest


def phi_of_composition(h: tuple[int, ...], x):
    """Evaluate the composition polynomial at x.

    Each denominator factor (x+1-s) for a partial sum s of h also occurs in
    the numerator prod_{m=1}^{k-1}(x+1-m); the matched factors are cancelled
    symbolically before multiplying, so integer x never divides by zero.
    """
    k = sum(h)
    skip = set()
    s = 0
    for part in h[:-1]:
        s += part
        skip.add(s)
    out = Fraction(1) if isinstance(x, Fraction) else 1
    for m in range(1, k):
        if m not in skip:
            out = out * (x + 1 - m)
    return out


def phi_sum_enumerated(l: int, k: int, x):
    """sum of phi(h, x) over H_{l,k} by direct streaming enumeration."""
    total = Fraction(0) if isinstance(x, Fraction) else 0
    for h in enumerate_compositions(l, k):
        total = total + phi_of_composition(h, x)
    return total


class _PhiTable:
    """DP table of phi_sum(l, k, x) for one fixed x, grown on demand."""

    def __init__(self, x):
        self.x = x
        # rows[k][l] for l in 0..k-1
        self.rows: list[list] = [None, [1 if not isinstance(x, Fraction) else Fraction(1)]]

    def value(self, l: int, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        if l < 0 or l > k - 1:
            return 0
        while len(self.rows) <= k:
            kk = len(self.rows) - 1  # extend from row kk to kk+1
            prev = self.rows[kk]
            factor = self.x - kk + 1
            new = []
            for ll in range(kk + 1):
                term = factor * prev[ll] if ll <= kk - 1 else 0
                if ll - 1 >= 0 and ll - 1 <= kk - 1:
                    term = term + prev[ll - 1]
                new.append(term)
            self.rows.append(new)
        return self.rows[k][l]


_phi_tables: dict = {}


def phi_sum(l: int, k: int, x):
    """phi_sum via the shift-identity dynamic program (cached per x)."""
    key = Fraction(x) if not isinstance(x, int) else x
    tab = _phi_tables.get(key)
    if tab is None:
        tab = _phi_tables[key] = _PhiTable(key)
    return tab.value(l, k)


def theta(a: int, n: int, N: int, k: int, i: int, j: int, l: int):
    """Coefficient of c_{i+l, j} in z^{k-1} P_{n,k,i}: (-1)^l phi_sum(l, k, Nj).

    Integer-valued at integer Nj; zero whenever l >= k.
    """
    if not (1 <= i <= a):
        raise ValueError("i out of range")
    if not (0 <= j <= n // N):
        raise ValueError("j out of range")
    if not (0 <= l <= a - i):
        raise ValueError("l out of range")
    if k < 1:
        raise ValueError("k must be >= 1")
    val = phi_sum(l, k, N * j)
    return -val if l % 2 else val


def _theta_row(a: int, n: int, N: int, k: int, j: int, lmax: int) -> list:
    x = N * j
    return [((-1) ** l) * phi_sum(l, k, x) for l in range(lmax + 1)]


def theta0(a: int, n: int, N: int, k: int, j: int, l: int, t: int):
    """Coefficient of c_{1+l, j} z^t in z^{k-1}(1-z)^{k-1} P_{n,k,0}.

    Double sum over (u, v) with Pochhammer weights; vanishes for Nj > t.
    """
    _check_theta0_args(a, n, N, k, j, l, t)
    if N * j > t or k < 2:
        return 0
    total = 0
    w_base = t - N * j
    for u in range(0, min(w_base, k - 2) + 1):
        w = w_base - u
        b = comb(k - u - 2, w) if w <= k - u - 2 else 0
        if b == 0:
            continue
        sgn = -b if w % 2 else b
        inner = 0
        for v in range(u, k - 1):
            th = theta(a, n, N, k - v - 1, 1, j, l) if l <= a - 1 else 0
            if th:
                inner += th * pochhammer(v - u + 1, u) * pochhammer(N * j - k + u + 2, v - u)
        total += sgn * inner
    return total


def theta0bar(a: int, n: int, N: int, k: int, j: int, l: int, t: int):
    """Same for the companion family; vanishes for Nj >= t.

    The closed form carries a global minus sign (the level-0 source term is
    -S/(1-z)).
    """
    _check_theta0_args(a, n, N, k, j, l, t)
    if N * j >= t or k < 2:
        return 0
    total = 0
    w_base = t - 1 - N * j
    for u in range(0, min(w_base, k - 2) + 1):
        w = w_base - u
        b = comb(k - u - 2, w) if w <= k - u - 2 else 0
        if b == 0:
            continue
        sgn = -b if w % 2 else b
        inner = 0
        for v in range(u, k - 1):
            th = theta(a, n, N, k - v - 1, 1, j, l) if l <= a - 1 else 0
            if th:
                inner += th * pochhammer(v - u + 1, u) * pochhammer(N * j - k + u + 3, v - u)
        total += sgn * inner
    return -total


def _check_theta0_args(a, n, N, k, j, l, t):
    if not (0 <= j <= n // N):
        raise ValueError("j out of range")
    if not (0 <= l <= a - 1):
        raise ValueError("l out of range")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (0 <= t <= n + k - 1):
        raise ValueError("t out of range")


class ThetaTable:
    """Memoizing facade over theta/theta0/theta0bar for one (a, n, N) context."""

    def __init__(self, a: int, n: int, N: int):
        if n % N:
            raise ValueError("N must divide n")
        self.a, self.n, self.N = a, n, N

    def theta(self, k, i, j, l):
        return theta(self.a, self.n, self.N, k, i, j, l)

    def theta0(self, k, j, l, t):
        return theta0(self.a, self.n, self.N, k, j, l, t)

    def theta0bar(self, k, j, l, t):
        return theta0bar(self.a, self.n, self.N, k, j, l, t)

    def theta_bound(self, k: int) -> int:
        """Prop-style size envelope k^a 2^n (k-1)!."""
        return k**self.a * 2**self.n * factorial(k - 1)

    def theta0_bound(self, k: int) -> int:
        return k ** (self.a + 1) * 8 ** max(k, self.n) * factorial(k - 1)


def p_family_by_recurrence(c, N: int, k_max: int) -> dict:
    """The recurrence-defined Laurent family P_{n,k,i}; the oracle for theta.

    c is an a x (n/N + 1) integer matrix; returns {(k, i): LaurentPoly} for
    1 <= k <= k_max, 1 <= i <= a, computed literally from

        P_{n,1,i} = sum_j c[i][j] z^{Nj},   P_{n,k+1,i} = P' - (1/z) P_{next}.
    """
    a = len(c)
    out = {}
    cur = []
    for i in range(1, a + 1):
        p = LaurentPoly({N * j: v for j, v in enumerate(c[i - 1])})
        cur.append(p)
        out[(1, i)] = p
    zero = LaurentPoly()
    for k in range(1, k_max):
        nxt = []
        for i in range(1, a + 1):
            above = cur[i] if i < a else zero
            q = step_ordinary(cur[i - 1], above)
            nxt.append(q)
            out[(k + 1, i)] = q
        cur = nxt
    return out


def p0_families(c, N: int, k_max: int) -> tuple[dict, dict]:
    """Cleared level-0 families: {k: z^{k-1}(1-z)^{k-1} P_{n,k,0}} and the
    companion bar family; the oracle for theta0/theta0bar."""
    fam = p_family_by_recurrence(c, N, k_max)
    cur = LaurentPoly()
    cur_bar = LaurentPoly()
    out = {1: cur}
    out_bar = {1: cur_bar}
    for k in range(1, k_max):
        s_cleared = fam[(k, 1)].shift(k - 1)  # z^{k-1} P_{n,k,1}, a polynomial
        if not s_cleared.is_polynomial():
            raise AssertionError("z^{k-1} P_{n,k,1} failed to be a polynomial")
        cur = step_cleared(cur, s_cleared, k)
        cur_bar = step_cleared_bar(cur_bar, s_cleared, k)
        out[k + 1] = cur
        out_bar[k + 1] = cur_bar
    return out, out_bar
