"""Rigorous complex balls and the L-value / polylogarithm evaluators.

A ComplexBall is an mpmath midpoint plus a nonnegative radius; arithmetic
propagates radii conservatively and pads every operation with a small
multiple of the working epsilon so mpmath rounding is absorbed.  Comparisons
in tests are always containment/overlap, never midpoint equality.

Unit-circle evaluation points are always roots of unity here (z = +-mu^l),
so the precision route for Li_i and L(chi, i, .) is the finite Hurwitz-zeta
combination with a certified Euler-Maclaurin remainder; plain summation with
an Abel-summation tail bound remains available as an independent (wide-ball)
cross-check path.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
from mpmath import mpf, mpc

from .characters import DirichletCharacter, chi_hat

__all__ = [
    "ComplexBall",
    "working_precision",
    "hurwitz_zeta_ball",
    "polylog_unit_root",
    "polylog_ball",
    "l_chi_ball",
    "l_chi_direct",
    "embed_cyclotomic",
    "root_of_unity",
]

GUARD_DIGITS = 20


class working_precision:
    """Context manager: mp.dps = digits + guard."""

    def __init__(self, digits: int, guard: int = GUARD_DIGITS):
        self.dps = digits + guard

    def __enter__(self):
        self._ctx = mpmath.workdps(self.dps)
        self._ctx.__enter__()
        return self

    def __exit__(self, *exc):
        return self._ctx.__exit__(*exc)


def _eps() -> mpf:
    # generous per-operation rounding pad at current precision
    return mpf(2) ** (8 - mpmath.mp.prec)


class ComplexBall:
    """Midpoint-radius complex enclosure.

    Each ball remembers the binary precision it was created at; arithmetic
    runs at the maximum of the operands' precisions, so combining
    high-precision balls outside a working_precision block cannot silently
    truncate midpoints.
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=0, prec: int | None = None):
        self.mid = mpc(mid)
        self.rad = mpf(rad)
        self.prec = prec if prec is not None else mpmath.mp.prec
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, value, digits: int | None = None) -> "ComplexBall":
        if digits is not None:
            with working_precision(digits):
                return cls.exact(value)
        if isinstance(value, Fraction):
            mid = mpf(value.numerator) / value.denominator
            rad = 0 if _mpf_to_fraction(mid) == value else abs(mid) * _eps()
            return cls(mid, rad)
        if isinstance(value, int):
            return cls(mpf(value), 0)
        return cls(value, abs(mpc(value)) * _eps())

    def __add__(self, other):
        with mpmath.workprec(_join_prec(self, other)):
            other = _as_ball(other)
            return ComplexBall(
                self.mid + other.mid,
                self.rad + other.rad + (abs(self.mid) + abs(other.mid)) * _eps(),
            )

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.mid, self.rad, self.prec)

    def __sub__(self, other):
        with mpmath.workprec(_join_prec(self, other)):
            return self + (-_as_ball(other))

    def __rsub__(self, other):
        with mpmath.workprec(_join_prec(self, other)):
            return _as_ball(other) + (-self)

    def __mul__(self, other):
        with mpmath.workprec(_join_prec(self, other)):
            other = _as_ball(other)
            a, b = abs(self.mid), abs(other.mid)
            rad = a * other.rad + b * self.rad + self.rad * other.rad + (a + 1) * (b + 1) * _eps()
            return ComplexBall(self.mid * other.mid, rad)

    __rmul__ = __mul__

    def abs_upper(self) -> mpf:
        with mpmath.workprec(self.prec):
            return abs(self.mid) + self.rad

    def abs_lower(self) -> mpf:
        with mpmath.workprec(self.prec):
            return max(mpf(0), abs(self.mid) - self.rad)

    def overlaps(self, other: "ComplexBall") -> bool:
        with mpmath.workprec(_join_prec(self, other)):
            return abs(self.mid - other.mid) <= self.rad + other.rad + _eps()

    def contains_zero(self) -> bool:
        with mpmath.workprec(self.prec):
            return abs(self.mid) <= self.rad

    def __repr__(self):
        return f"Ball({mpmath.nstr(self.mid, 12)} +/- {mpmath.nstr(self.rad, 3)})"

    def to_json_dict(self) -> dict:
        au = self.abs_upper()
        return {
            "midpoint_re": mpmath.nstr(self.mid.real, 40),
            "midpoint_im": mpmath.nstr(self.mid.imag, 40),
            "radius": mpmath.nstr(self.rad, 5),
            "log10_abs": float(mpmath.log10(au)) if au > 0 else None,
        }


def _as_ball(x) -> ComplexBall:
    return x if isinstance(x, ComplexBall) else ComplexBall.exact(x)


def _join_prec(a, b=None) -> int:
    p = a.prec if isinstance(a, ComplexBall) else 0
    if isinstance(b, ComplexBall):
        p = max(p, b.prec)
    return max(p, mpmath.mp.prec)


def _to_mpc(z) -> mpc:
    if isinstance(z, (int, Fraction)):
        q = Fraction(z)
        return mpc(mpf(q.numerator) / q.denominator)
    return mpc(z)


def _mpf_to_fraction(x: mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    f = Fraction(man) * Fraction(2) ** exp
    return -f if sign else f


def root_of_unity(num: int, den: int) -> mpc:
    """e^{2 i pi num/den} at current precision."""
    return mpmath.expjpi(mpmath.mpf(2 * num) / den)


def embed_cyclotomic(x, digits: int) -> ComplexBall:
    """Embed an exact cyclotomic number as a ball at `digits` precision."""
    with working_precision(digits):
        z = root_of_unity(1, x.field.M)
        acc = mpc(0)
        zp = mpc(1)
        size = mpf(0)
        for a in x.coords:
            if a:
                term = zp * mpf(a.numerator) / a.denominator
                acc += term
                size += abs(term)
            zp *= z
        return ComplexBall(acc, (size + abs(acc)) * _eps() * x.field.degree)


def hurwitz_zeta_ball(s: int, a: Fraction, digits: int) -> ComplexBall:
    """zeta(s, a) = sum_{m>=0} (m+a)^{-s} for integer s >= 2, rational
    a in (0, 1], with a certified Euler-Maclaurin remainder.

    For real s > 0 the integrand t -> (t+a)^{-s} is completely monotone, so
    the remainder after truncating the Bernoulli sum is bounded by the first
    omitted term; that term is added to the radius.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    a = Fraction(a)
    if not 0 < a <= 1:
        raise ValueError("a must be in (0, 1]")
    with working_precision(digits):
        prec_target = mpf(10) ** (-(digits + GUARD_DIGITS // 2))
        M = max(10, int(0.45 * (digits + GUARD_DIGITS)) + s)
        while True:
            af = mpf(a.numerator) / a.denominator
            head = mpmath.fsum((m + af) ** (-s) for m in range(M))
            base = M + af
            tail = base ** (1 - s) / (s - 1) + base ** (-s) / 2
            # Bernoulli correction sum
            corr = mpf(0)
            v = 1
            poch = mpf(s)  # (s)_{2v-1} running value
            last_term = None
            ok = False
            while True:
                b2v = mpmath.bernoulli(2 * v)
                term = b2v / mpmath.factorial(2 * v) * poch * base ** (-s - 2 * v + 1)
                if abs(term) < prec_target:
                    remainder = abs(term)
                    ok = True
                    break
                if last_term is not None and abs(term) > abs(last_term):
                    # divergent zone reached before target: enlarge M
                    remainder = abs(last_term)
                    break
                corr += term
                last_term = term
                poch *= (s + 2 * v - 1) * (s + 2 * v)
                v += 1
                if v > 4 * (digits + GUARD_DIGITS):
                    remainder = abs(term)
                    break
            if ok:
                mid = head + tail + corr
                rad = remainder + abs(mid) * _eps() * (M + 4 * v)
                return ComplexBall(mid, rad)
            M *= 2


def polylog_unit_root(i: int, num: int, den: int, digits: int) -> ComplexBall:
    """Li_i(e^{2 i pi num/den}) with certified error.

    i >= 2 goes through the Hurwitz-zeta split over residues mod den;
    i = 1 is -log(1 - z) (z != 1 required).
    """
    num %= den
    if i < 1:
        raise ValueError("i must be >= 1")
    if i == 1:
        if num == 0:
            raise ValueError("Li_1(1) diverges")
        with working_precision(digits):
            z = root_of_unity(num, den)
            val = -mpmath.log(1 - z)
            return ComplexBall(val, (abs(val) + 1) * _eps() * 8)
    if num == 0 and den == 1:
        return zeta_ball(i, digits)
    with working_precision(digits):
        acc = ComplexBall(0)
        for res in range(1, den + 1):
            w = root_of_unity(num * res % den, den)
            zres = hurwitz_zeta_ball(i, Fraction(res, den), digits)
            acc = acc + zres * ComplexBall(w, abs(w) * _eps())
        scale = Fraction(1, den**i)
        return acc * ComplexBall.exact(scale)


def zeta_ball(s: int, digits: int) -> ComplexBall:
    return hurwitz_zeta_ball(s, Fraction(1), digits)


def polylog_series(i: int, z, digits: int, max_terms: int = 400_000) -> ComplexBall:
    """Li_i by direct summation.

    For |z| < 1 the geometric comparison bounds the tail; for |z| = 1 (z a
    root of unity passed as an exact mpc with a tiny radius is NOT supported
    here -- use polylog_unit_root) the Abel bound 2/(|1-z| (T+1)^i) applies.
    The ball is honest but can be wide on the unit circle.
    """
    with working_precision(digits):
        zc = mpc(z)
        az = abs(zc)
        if az > 1 + _eps():
            raise ValueError("need |z| <= 1")
        target = mpf(10) ** (-(digits + 5))
        acc = mpc(0)
        zp = mpc(1)
        on_circle = az > 1 - mpf(10) ** (-8)
        if on_circle and abs(1 - zc) < mpf(10) ** (-8):
            raise ValueError("z too close to 1")
        T = 0
        while True:
            T += 1
            zp *= zc
            acc += zp / mpf(T) ** i
            if on_circle:
                tail = 2 / (abs(1 - zc) * mpf(T + 1) ** i)
            else:
                tail = az ** (T + 1) / (mpf(T + 1) ** i * (1 - az))
            if tail < target or T >= max_terms:
                break
        return ComplexBall(acc, tail + abs(acc) * _eps() * T)


def polylog_ball(i: int, z, digits: int) -> ComplexBall:
    """Li_i(z) dispatch: exact rationals and |z| < 1 go through the series;
    z = +-1 and exact rational angles should use polylog_unit_root."""
    if i < 1:
        raise ValueError("i must be >= 1")
    if isinstance(z, (int, Fraction)):
        zq = Fraction(z)
        if zq == 0:
            return ComplexBall(0)
        if zq == 1:
            if i == 1:
                raise ValueError("Li_1(1) diverges")
            return zeta_ball(i, digits)
        if zq == -1:
            return polylog_unit_root(i, 1, 2, digits)
        if abs(zq) < 1:
            with working_precision(digits):
                return polylog_series(i, mpf(zq.numerator) / zq.denominator, digits)
        raise ValueError("rational z must satisfy |z| <= 1")
    return polylog_series(i, z, digits)


def l_chi_ball(chi: DirichletCharacter, i: int, z, digits: int) -> ComplexBall:
    """L(chi, i, z) = sum chi(m) z^m / m^i.

    z = +-1: certified Hurwitz route over residues mod N (or 2N).
    |z| < 1: direct summation with geometric tail.
    """
    N = chi.N
    if isinstance(z, (int, Fraction)) and Fraction(z) in (1, -1):
        zq = Fraction(z)
        if zq == 1 and i == 1:
            raise ValueError("L(chi, 1, 1) is outside this route")
        P = N if zq == 1 else 2 * N
        with working_precision(digits):
            if i == 1:
                # z = -1: Fourier route over Li_1 at the 2N-th roots -mu^l
                acc = ComplexBall(0)
                for ell in range(N):
                    chl = chi_hat(chi, ell)
                    if chl.is_zero():
                        continue
                    li = polylog_unit_root(1, (N + 2 * ell) % (2 * N), 2 * N, digits)
                    acc = acc + embed_cyclotomic(chl, digits) * li
                return acc
            acc = ComplexBall(0)
            for res in range(1, P + 1):
                e = chi.val_exp[res % N]
                if e is None:
                    continue
                w = embed_cyclotomic(chi.field.zeta_power(e), digits)
                if zq == -1 and res % 2 == 1:
                    w = -w
                acc = acc + w * hurwitz_zeta_ball(i, Fraction(res, P), digits)
            return acc * ComplexBall.exact(Fraction(1, P**i))
    # direct summation
    with working_precision(digits):
        zc = _to_mpc(z)
        az = abs(zc)
        if az >= 1 - mpf(10) ** (-8):
            raise ValueError("unit-circle z must be +-1 (exact) on this route")
        target = mpf(10) ** (-(digits + 5))
        acc = ComplexBall(0)
        values = [None] * N
        for m in range(N):
            e = chi.val_exp[m]
            if e is not None:
                values[m] = embed_cyclotomic(chi.field.zeta_power(e), digits)
        zp = mpc(1)
        T = 0
        while True:
            T += 1
            zp *= zc
            v = values[T % N]
            if v is not None:
                acc = acc + v * ComplexBall(zp / mpf(T) ** i)
            tail = az ** (T + 1) / (mpf(T + 1) ** i * (1 - az))
            if tail < target:
                break
        return ComplexBall(acc.mid, acc.rad + tail)


def l_chi_direct(
    chi: DirichletCharacter, i: int, z, digits: int, max_terms: int = 200_000
) -> ComplexBall:
    """Independent wide-ball route: plain summation of chi(m) z^m/m^i with an
    Abel-summation tail bound (partial sums of chi(m) z^m over a full period
    are bounded; the bound used is crude but rigorous)."""
    if isinstance(z, (int, Fraction)):
        zq = Fraction(z)
        if zq == 1 and chi.is_principal():
            raise ValueError("L(chi, i, 1) diverges for principal chi at i = 1")
        on_circle = zq in (1, -1)
    else:
        on_circle = False
    with working_precision(digits):
        zc = _to_mpc(z)
        az = abs(zc)
        if az > 1 + _eps():
            raise ValueError("need |z| <= 1")
        if not on_circle and az > 1 - mpf(10) ** (-8):
            raise ValueError("unit-circle z must be given exactly as +-1 here")
        N = chi.N
        values = [None] * N
        for m in range(N):
            e = chi.val_exp[m]
            if e is not None:
                values[m] = embed_cyclotomic(chi.field.zeta_power(e), digits)
        acc = ComplexBall(0)
        zp = mpc(1)
        for T in range(1, max_terms + 1):
            zp *= zc
            v = values[T % N]
            if v is not None:
                acc = acc + v * ComplexBall(zp / mpf(T) ** i)
        if on_circle:
            # Abel: the period-P partial sums of chi(m) z^m vanish (P = N or
            # 2N; N odd), so all partial sums are bounded by one period's
            # absolute mass <= 2N, and |tail| <= 2N / (T+1)^i.
            tail = 2 * N / mpf(max_terms + 1) ** i
        else:
            tail = az ** (max_terms + 1) / (mpf(max_terms + 1) ** i * (1 - az))
        return ComplexBall(acc.mid, acc.rad + tail)
