"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored on the power basis 1, zeta, ..., zeta^{phi(M)-1} with
Fraction coordinates, fully reduced modulo the M-th cyclotomic polynomial, so
zero-testing and equality are exact.  Complex embeddings (zeta -> e^{2 i pi/M})
are available at any requested precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = ["cyclotomic_polynomial", "CyclotomicField", "CyclotomicNumber"]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (dense, low-to-high)."""
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        c, lead = num[-1], den[-1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients (low-to-high) of the M-th cyclotomic polynomial.

    Computed as (x^M - 1) / prod_{d | M, d < M} Phi_d(x); exact integer
    division at every step.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    num = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise AssertionError("cyclotomic division left a remainder")
    return tuple(num)


class CyclotomicField:
    """Q(zeta_M) with cached reduction data; one instance per M."""

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, M: int):
        if M in cls._instances:
            return cls._instances[M]
        self = super().__new__(cls)
        cls._instances[M] = self
        self.M = M
        phi_poly = cyclotomic_polynomial(M)
        self.degree = len(phi_poly) - 1
        # reduction table: zeta^e as a power-basis vector, for e in [0, 2M)
        d = self.degree
        table = []
        for e in range(d):
            row = [Fraction(0)] * d
            row[e] = Fraction(1)
            table.append(row)
        for e in range(d, 2 * M):
            prev = table[e - 1]
            row = [Fraction(0)] + list(prev[:-1])  # multiply by zeta
            top = prev[-1]
            if top:
                for i in range(d):
                    row[i] -= top * phi_poly[i]
            table.append(row)
        self._zeta_pow = table
        self.zero = CyclotomicNumber(self, tuple(Fraction(0) for _ in range(d)))
        self.one = self.zeta_power(0)
        return self

    def zeta_power(self, e: int) -> "CyclotomicNumber":
        """zeta_M^e as a field element."""
        return CyclotomicNumber(self, tuple(self._zeta_pow[e % self.M]))

    def from_rational(self, q) -> "CyclotomicNumber":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(q)
        return CyclotomicNumber(self, tuple(coords))

    def embedding(self, dps: int):
        """zeta_M as an mpmath complex number at dps decimal digits."""
        with mpmath.workdps(dps + 10):
            return mpmath.expjpi(mpmath.mpf(2) / self.M)

    def __repr__(self):
        return f"CyclotomicField({self.M})"


class CyclotomicNumber:
    """Element of Q(zeta_M) on the power basis; immutable and canonical."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CyclotomicField, coords: tuple):
        self.field = field
        self.coords = coords

    def _check(self, other):
        if self.field is not other.field:
            raise ValueError("elements live in different cyclotomic fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        self._check(other)
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        self._check(other)
        return CyclotomicNumber(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.field, tuple(a * other for a in self.coords))
        self._check(other)
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    prod[i + j] += a * b
        table = self.field._zeta_pow
        out = list(prod[:d])
        for e in range(d, 2 * d - 1):
            c = prod[e]
            if c:
                row = table[e]
                for i in range(d):
                    out[i] += c * row[i]
        return CyclotomicNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def galois(self, t: int) -> "CyclotomicNumber":
        """Apply zeta -> zeta^t (t coprime to M)."""
        M = self.field.M
        if math.gcd(t, M) != 1:
            raise ValueError("t must be coprime to M")
        out = self.field.zero
        for e, a in enumerate(self.coords):
            if a:
                out = out + self.field.zeta_power(e * t) * a
        return out

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation zeta -> zeta^{-1}."""
        return self.galois(self.field.M - 1) if self.field.M > 1 else self

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.M, self.coords))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers not supported")
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def embed(self, dps: int):
        """Complex value under zeta -> e^{2 i pi / M}, as an mpc at dps digits."""
        with mpmath.workdps(dps + 10):
            z = self.field.embedding(dps)
            acc = mpmath.mpc(0)
            zp = mpmath.mpc(1)
            for a in self.coords:
                if a:
                    acc += zp * mpmath.mpf(a.numerator) / a.denominator
                zp *= z
            return acc

    def __repr__(self):
        terms = [
            f"{a}*z^{e}" for e, a in enumerate(self.coords) if a
        ] or ["0"]
        return f"Cyc({self.field.M}; {' + '.join(terms)})"
