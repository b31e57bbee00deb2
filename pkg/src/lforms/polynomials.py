"""Sparse Laurent polynomials and the derivation-recurrence steps.

Coefficients are exact (int or Fraction); the zero polynomial stores nothing.
The two step functions implement one application of the differential system
underlying the whole construction:

    ordinary level:   R_{k+1} = R_k' - (1/z) S_k
    pole level:       R_{k+1} = R_k' + 1/(z(1-z)) S_k      (kept cleared)
    pole level (bar): R_{k+1} = R_k' - 1/(1-z) S_k          (kept cleared)

"Cleared" means the level-0 objects are represented by the polynomial
z^{k-1}(1-z)^{k-1} * R_k, which stays a true polynomial throughout.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "LaurentPoly",
    "binom_row",
    "one_minus_z_power",
    "step_ordinary",
    "step_cleared",
    "step_cleared_bar",
    "poly_divide_exact",
]


class LaurentPoly:
    """Map exponent -> nonzero coefficient; exponents may be negative."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for e, v in coeffs.items() if isinstance(coeffs, dict) else coeffs:
                if v:
                    self.c[e] = self.c.get(e, 0) + v
                    if not self.c[e]:
                        del self.c[e]

    @classmethod
    def monomial(cls, e: int, v=1) -> "LaurentPoly":
        p = cls()
        if v:
            p.c[e] = v
        return p

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other):
        out = LaurentPoly()
        out.c = dict(self.c)
        for e, v in other.c.items():
            w = out.c.get(e, 0) + v
            if w:
                out.c[e] = w
            else:
                out.c.pop(e, None)
        return out

    def __sub__(self, other):
        out = LaurentPoly()
        out.c = dict(self.c)
        for e, v in other.c.items():
            w = out.c.get(e, 0) - v
            if w:
                out.c[e] = w
            else:
                out.c.pop(e, None)
        return out

    def __neg__(self):
        out = LaurentPoly()
        out.c = {e: -v for e, v in self.c.items()}
        return out

    def scale(self, s) -> "LaurentPoly":
        out = LaurentPoly()
        if s:
            out.c = {e: v * s for e, v in self.c.items()}
        return out

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by z^d."""
        out = LaurentPoly()
        out.c = {e + d: v for e, v in self.c.items()}
        return out

    def derivative(self) -> "LaurentPoly":
        out = LaurentPoly()
        out.c = {e - 1: v * e for e, v in self.c.items() if e != 0}
        return out

    def __mul__(self, other):
        out = LaurentPoly()
        acc = out.c
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = acc.get(e, 0) + v1 * v2
                if w:
                    acc[e] = w
                else:
                    acc.pop(e, None)
        return out

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.c == other.c

    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    def max_exp(self) -> int:
        return max(self.c) if self.c else 0

    def coeff(self, e: int):
        return self.c.get(e, 0)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.c)

    def supported_on(self, N: int, offset: int = 0) -> bool:
        """True when every exponent is == offset mod N."""
        return all((e - offset) % N == 0 for e in self.c)

    def eval_fraction(self, x) -> Fraction:
        """Evaluate at a nonzero rational point."""
        x = Fraction(x)
        if not self.c:
            return Fraction(0)
        if x == 0:
            if self.min_exp() < 0:
                raise ZeroDivisionError("pole at 0")
            return Fraction(self.c.get(0, 0))
        return sum((Fraction(v) * x**e for e, v in self.c.items()), Fraction(0))

    def eval_cyclotomic(self, point, inverse_point):
        """Evaluate at an invertible cyclotomic point (inverse supplied)."""
        field = point.field
        acc = field.zero
        pow_cache = {0: field.one}

        def power(e):
            if e in pow_cache:
                return pow_cache[e]
            base = point if e > 0 else inverse_point
            val = base ** abs(e)
            pow_cache[e] = val
            return val

        for e, v in self.c.items():
            acc = acc + power(e) * Fraction(v)
        return acc

    def map_coeffs(self, f) -> "LaurentPoly":
        out = LaurentPoly()
        for e, v in self.c.items():
            w = f(v)
            if w:
                out.c[e] = w
        return out

    def __repr__(self):
        if not self.c:
            return "LaurentPoly(0)"
        terms = [f"{v}*z^{e}" for e, v in sorted(self.c.items())]
        return "LaurentPoly(" + " + ".join(terms) + ")"


def binom_row(n: int) -> list[int]:
    """Binomial coefficients C(n, 0..n)."""
    row = [1]
    for i in range(n):
        row.append(row[-1] * (n - i) // (i + 1))
    return row


def one_minus_z_power(n: int) -> LaurentPoly:
    """(1 - z)^n as a Laurent polynomial."""
    return LaurentPoly({i: ((-1) ** i) * b for i, b in enumerate(binom_row(n))})


def step_ordinary(r: LaurentPoly, s: LaurentPoly) -> LaurentPoly:
    """R' - (1/z) S."""
    return r.derivative() - s.shift(-1)


def step_cleared(cleared: LaurentPoly, s_cleared: LaurentPoly, k: int) -> LaurentPoly:
    """One step of R_{k+1} = R_k' + S_k/(z(1-z)) in cleared form.

    `cleared` is z^{k-1}(1-z)^{k-1} R_k and `s_cleared` is z^{k-1} S_k (a
    polynomial).  Returns z^k (1-z)^k R_{k+1}:

        z(1-z) C' + (1-k)(1-2z) C + (1-z)^{k-1} * (z^{k-1} S_k).
    """
    c_prime = cleared.derivative()
    term1 = c_prime.shift(1) - c_prime.shift(2)
    term2 = cleared.scale(1 - k) - cleared.shift(1).scale(2 * (1 - k))
    term3 = one_minus_z_power(k - 1) * s_cleared
    return term1 + term2 + term3


def step_cleared_bar(cleared: LaurentPoly, s_cleared: LaurentPoly, k: int) -> LaurentPoly:
    """One step of R_{k+1} = R_k' - S_k/(1-z) in cleared form.

    Same convention; the source term is -z (1-z)^{k-1} * (z^{k-1} S_k).
    """
    c_prime = cleared.derivative()
    term1 = c_prime.shift(1) - c_prime.shift(2)
    term2 = cleared.scale(1 - k) - cleared.shift(1).scale(2 * (1 - k))
    term3 = (one_minus_z_power(k - 1) * s_cleared).shift(1)
    return term1 + term2 - term3


def poly_divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact Laurent division num/den (raises if the remainder is nonzero)."""
    if den.is_zero():
        raise ZeroDivisionError
    if num.is_zero():
        return LaurentPoly()
    rem = LaurentPoly()
    rem.c = dict(num.c)
    dmax = den.max_exp()
    dlead = den.coeff(dmax)
    min_q_exp = num.min_exp() - den.min_exp()
    q = LaurentPoly()
    while not rem.is_zero():
        e = rem.max_exp() - dmax
        if e < min_q_exp:
            raise ArithmeticError("non-exact polynomial division")
        c = rem.coeff(rem.max_exp())
        if isinstance(c, int) and isinstance(dlead, int) and c % dlead == 0:
            factor = c // dlead
        else:
            factor = Fraction(c) / Fraction(dlead)
        q.c[e] = factor
        rem = rem - den.shift(e).scale(factor)
    return q
