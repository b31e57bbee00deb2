"""Constructive small-solution search for the vanishing-Taylor linear system.

The target rational function F_n is determined by an integer matrix c[i][j]
(simple-fraction coefficients at the poles -Nj of orders i <= a).  Its first
omega*n - 1 Taylor coefficients at infinity must vanish; rewritten through
the derivation recurrence this becomes an integer linear system whose
coefficients stay geometric in n, and any sufficiently small nonzero integer
kernel vector realizes the pigeonhole existence statement constructively.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial

import mpmath

from .arith import delta_lcm_clearing, lcm_upto
from .coeffs import phi_sum
from .lattice import dot, enumerate_shortest, kernel_of_int_rows, lll_reduce, norm_sq

__all__ = [
    "Parameters",
    "SiegelSystem",
    "FnRepresentation",
    "InfeasibleShapeError",
    "NoSolutionWithinBoundError",
    "admissible_n",
    "build_system",
    "solve_small",
    "construct_Fn",
]


class InfeasibleShapeError(ValueError):
    """The equality block leaves no guaranteed nonzero kernel."""


class NoSolutionWithinBoundError(ValueError):
    """No candidate satisfied the inequality block; carries the best vector."""

    def __init__(self, message: str, best: list[int]):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class Parameters:
    """The construction parameter tuple (a, N, r, omega, Omega, kappa, h)."""

    a: int
    N: int
    r: Fraction
    omega: Fraction
    Omega: Fraction
    kappa: Fraction
    h: int

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "omega", Fraction(self.omega))
        object.__setattr__(self, "Omega", Fraction(self.Omega))
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        if self.N < 1 or self.N % 2 == 0:
            raise ValueError("N must be an odd positive integer")
        if self.a < 3 * self.N:
            raise ValueError("a must be >= 3N")
        if self.r < 2:
            raise ValueError("r must be >= 2")
        if not (2 * self.r < self.kappa < self.omega <= self.Omega):
            raise ValueError("need 2r < kappa < omega <= Omega")
        if not self.Omega < Fraction(self.a, self.N):
            raise ValueError("need Omega < a/N")
        if not 0 <= self.h <= self.a:
            raise ValueError("need 0 <= h <= a")

    @property
    def kernel_property_ok(self) -> bool:
        """(h+1)(kappa-2r)N + omega > a: the zero-estimate count closes."""
        return (self.h + 1) * (self.kappa - 2 * self.r) * self.N + self.omega > self.a

    def to_json_dict(self) -> dict:
        return {
            "a": self.a,
            "N": self.N,
            "r": str(self.r),
            "omega": str(self.omega),
            "Omega": str(self.Omega),
            "kappa": str(self.kappa),
            "h": self.h,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Parameters":
        return cls(
            a=int(d["a"]),
            N=int(d["N"]),
            r=Fraction(d["r"]),
            omega=Fraction(d["omega"]),
            Omega=Fraction(d["Omega"]),
            kappa=Fraction(d["kappa"]),
            h=int(d["h"]),
        )


def admissible_period(params: Parameters) -> int:
    """Smallest positive n with omega*n, Omega*n, n/N, rn/N, kappa*n all integers."""
    dens = [
        params.N,
        params.omega.denominator,
        params.Omega.denominator,
        params.kappa.denominator,
        (params.r / params.N).denominator,
    ]
    return math.lcm(*dens)


def admissible_n(params: Parameters, count: int) -> list[int]:
    """The first `count` admissible n (the divisibility lattice; no
    largeness filtering, which is the caller's concern)."""
    p = admissible_period(params)
    return [p * (i + 1) for i in range(count)]


@dataclass
class SiegelSystem:
    """The integer equality/inequality system for one admissible n."""

    params: Parameters
    n: int
    L: int
    eq_rows: list[list[int]]
    eq_norm_sq: list[int]            # exact squared row norms (the H_k^2)
    ineq_rows: list[list[int]]
    ineq_H_sq: list[int]             # paper-style envelopes L * k^{2a} n^{2k}
    ineq_G: list[Fraction]           # G_k = r^{Omega n - k}
    ineq_k: list[int]

    @cached_property
    def K0(self) -> int:
        return len(self.eq_rows)

    @cached_property
    def bound_product_sq(self) -> Fraction:
        """prod H_k^2 * prod G_k^2: X^2 = L * (this)^(1/(L-K0))."""
        out = Fraction(1)
        for s in self.eq_norm_sq:
            out *= s
        for s, g in zip(self.ineq_H_sq, self.ineq_G):
            out *= Fraction(s) * g * g
        return out

    def norm_within_bound(self, v: list[int]) -> bool:
        """Exact check ||v||^2 <= X^2, via (||v||^2)^(L-K0) <= L^(L-K0) * prod."""
        e = self.L - self.K0
        return Fraction(norm_sq(v)) ** e <= Fraction(self.L) ** e * self.bound_product_sq

    def max_abs_within_bound(self, v: list[int]) -> bool:
        e = self.L - self.K0
        m = max(abs(x) for x in v)
        return Fraction(m * m) ** e <= Fraction(self.L) ** e * self.bound_product_sq

    def ineq_satisfied(self, v: list[int]) -> bool:
        """|row . v| <= H_k X / G_k, exactly, for every inequality row."""
        e = self.L - self.K0
        for row, h2, g in zip(self.ineq_rows, self.ineq_H_sq, self.ineq_G):
            val = dot(row, v)
            # (|val| G / H)^2e <= X^2e = L^e prod
            lhs = (Fraction(val * val) * g * g / h2) ** e
            if lhs > Fraction(self.L) ** e * self.bound_product_sq:
                return False
        return True

    def log10_X(self) -> float:
        e = self.L - self.K0
        with mpmath.workdps(30):
            lg = mpmath.log(self.bound_product_sq.numerator) - mpmath.log(
                self.bound_product_sq.denominator
            )
            val = (mpmath.log(self.L) / 2 + lg / (2 * e)) / mpmath.log(10)
            return float(val)


def _eq_row_scale(a: int, n: int, k: int) -> tuple[int, int]:
    """Numerator d_k * Delta_{a, max(k,n)} and denominator (k-1)! of the
    integrality-clearing factor for equality row k."""
    return lcm_upto(k) * delta_lcm_clearing(a, max(k, n)), factorial(k - 1)


def build_system(params: Parameters, n: int) -> SiegelSystem:
    """Assemble the system; equality entries are verified integral."""
    a, N = params.a, params.N
    if n % N or (params.omega * n).denominator != 1 or (params.kappa * n).denominator != 1:
        raise ValueError(f"n = {n} is not admissible")
    nN = n // N
    L = a * (nN + 1)
    omega_n = int(params.omega * n)
    Omega_n = int(params.Omega * n)
    if omega_n - 1 >= L:
        raise InfeasibleShapeError(
            f"equality rows {omega_n - 1} >= unknowns {L}: no kernel guaranteed"
        )
    eq_rows = []
    eq_norm_sq = []
    for k in range(1, omega_n):
        num, den = _eq_row_scale(a, n, k)
        row = [0] * L
        for j in range(nN + 1):
            x = N * j
            for l in range(a):  # couples to c_{1+l, j}
                th = phi_sum(l, k, x)
                if l % 2:
                    th = -th
                if th:
                    scaled = Fraction(num * th, den)
                    if scaled.denominator != 1:
                        raise AssertionError(
                            f"equality entry not integral at k={k}, j={j}, l={l}"
                        )
                    row[l * (nN + 1) + j] = int(scaled)
        eq_rows.append(row)
        eq_norm_sq.append(norm_sq(row))
    ineq_rows = []
    ineq_H_sq = []
    ineq_G = []
    ineq_k = []
    for k in range(omega_n, Omega_n):
        row = [0] * L
        for i in range(1, min(a, k) + 1):
            for j in range(nN + 1):
                row[(i - 1) * (nN + 1) + j] = comb(k - 1, k - i) * (-N * j) ** (k - i)
        ineq_rows.append(row)
        ineq_H_sq.append(L * k ** (2 * a) * n ** (2 * k))
        ineq_G.append(params.r ** (Omega_n - k))
        ineq_k.append(k)
    return SiegelSystem(
        params=params,
        n=n,
        L=L,
        eq_rows=eq_rows,
        eq_norm_sq=eq_norm_sq,
        ineq_rows=ineq_rows,
        ineq_H_sq=ineq_H_sq,
        ineq_G=ineq_G,
        ineq_k=ineq_k,
    )


def solve_small(system: SiegelSystem) -> list[int]:
    """A nonzero integer vector solving the equality block exactly and the
    inequality block within its Siegel budget.

    Strategy: exact integer kernel of the equality block, LLL on the kernel
    lattice (with the inequality rows adjoined as weighted coordinates when
    present), shortest-candidate selection, then exact post-hoc verification.
    Kernel rank <= 4 falls back to exhaustive enumeration so tiny instances
    are certifiably optimal.  Fully deterministic.
    """
    if system.L <= system.K0:
        raise InfeasibleShapeError("no kernel dimension available")
    kernel = kernel_of_int_rows(system.eq_rows, system.L)
    if not kernel:
        raise InfeasibleShapeError("equality block has full rank: kernel is zero")
    if len(kernel) <= 4:
        cand = enumerate_shortest(kernel)
        if cand is not None:
            kernel = [cand] + [v for v in kernel if v != cand]
    candidates = sorted(kernel, key=norm_sq)
    if not system.ineq_rows:
        # any exact solution of the equality block is accepted; the X_n
        # ratio is reported by the caller, not enforced here
        return _canonical_sign(candidates[0])
    # weighted reduction: append the inequality pairings as extra coordinates
    # scaled by ~ G_k/(H_k X); weights only steer the reduction, correctness
    # comes from the exact checks below.
    e = system.L - system.K0
    with mpmath.workdps(40):
        log_x = (
            mpmath.log(system.L) / 2
            + (
                mpmath.log(system.bound_product_sq.numerator)
                - mpmath.log(system.bound_product_sq.denominator)
            )
            / (2 * e)
        )
        aug = []
        scale = 10**6
        for v in kernel:
            extra = []
            for row, h2, g in zip(system.ineq_rows, system.ineq_H_sq, system.ineq_G):
                log_w = mpmath.log(g) - mpmath.log(h2) / 2 - log_x
                w = mpmath.exp(log_w + mpmath.log(scale))
                extra.append(int(mpmath.nint(w * dot(row, v))))
            aug.append([x * scale for x in v] + extra)
    reduced = lll_reduce(aug)
    trimmed = []
    for v in reduced:
        base = [x // scale for x in v[: system.L]]
        if any(x * scale != y for x, y in zip(base, v)):
            continue
        if any(base):
            trimmed.append(base)
    for cand in sorted(trimmed, key=norm_sq):
        if system.norm_within_bound(cand) and system.ineq_satisfied(cand):
            return _canonical_sign(cand)
    best = candidates[0]
    if system.norm_within_bound(best) and system.ineq_satisfied(best):
        return _canonical_sign(best)
    raise NoSolutionWithinBoundError(
        "no candidate satisfied the inequality block within the bound", best
    )


def _canonical_sign(v: list[int]) -> list[int]:
    lead = next((x for x in v if x), 0)
    return [-x for x in v] if lead < 0 else list(v)


@dataclass
class FnRepresentation:
    """A constructed F_n: integer pole coefficients plus derived data."""

    params: Parameters
    n: int
    c: list[list[int]]               # a rows, n/N + 1 columns
    bn: int
    max_abs: int
    l2_norm_sq: int
    log10_X: float
    xi_envelope_ratio: float         # log max|c| / (n log xi), a measurement

    @property
    def nN(self) -> int:
        return self.n // self.params.N

    def taylor_coeff(self, k: int) -> int:
        """Taylor coefficient of t^{-k} at infinity, from the explicit
        binomial expansion of the simple fractions."""
        N = self.params.N
        total = 0
        for i in range(1, min(self.params.a, k) + 1):
            for j in range(self.nN + 1):
                cij = self.c[i - 1][j]
                if cij:
                    total += comb(k - 1, k - i) * (-N * j) ** (k - i) * cij
        return total

    def taylor_coeffs_series(self, k_max: int) -> list[int]:
        """Independent route: expand each 1/(t+Nj)^i as a power series in
        u = 1/t by geometric-series recurrence and repeated series products.
        Returns [A_1, ..., A_{k_max}]."""
        N = self.params.N
        acc = [0] * (k_max + 1)  # coefficient of u^k
        pow_cache: dict[tuple[int, int], list[int]] = {}
        for j in range(self.nN + 1):
            geo = [(-N * j) ** s for s in range(k_max + 1)]
            series = [1] + [0] * k_max  # (sum geo u^s)^0
            for i in range(1, self.params.a + 1):
                series = _series_mul(series, geo, k_max)
                pow_cache[(j, i)] = series
        for i in range(1, self.params.a + 1):
            for j in range(self.nN + 1):
                cij = self.c[i - 1][j]
                if cij:
                    s = pow_cache[(j, i)]
                    for k in range(i, k_max + 1):
                        acc[k] += cij * s[k - i]
        return acc[1:]

    def p_polynomials(self):
        """P_{n,i}(z) = sum_j c_{i,j} z^{Nj} for i = 1..a (Laurent objects)."""
        from .polynomials import LaurentPoly

        N = self.params.N
        return [
            LaurentPoly({N * j: v for j, v in enumerate(self.c[i - 1])})
            for i in range(1, self.params.a + 1)
        ]

    def to_json_dict(self) -> dict:
        return {
            "schema": "fn/v1",
            "params": self.params.to_json_dict(),
            "n": self.n,
            "c": [[str(v) for v in row] for row in self.c],
            "bn": self.bn,
            "norms": {"max_abs": str(self.max_abs), "l2_sq": str(self.l2_norm_sq)},
            "X": {"log10": self.log10_X},
            "xi_envelope_ratio": self.xi_envelope_ratio,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, d: dict) -> "FnRepresentation":
        params = Parameters.from_json_dict(d["params"])
        c = [[int(v) for v in row] for row in d["c"]]
        return cls(
            params=params,
            n=int(d["n"]),
            c=c,
            bn=int(d["bn"]),
            max_abs=int(d["norms"]["max_abs"]),
            l2_norm_sq=int(d["norms"]["l2_sq"]),
            log10_X=float(d["X"]["log10"]),
            xi_envelope_ratio=float(d["xi_envelope_ratio"]),
        )


def _series_mul(a: list[int], b: list[int], k_max: int) -> list[int]:
    out = [0] * (k_max + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(min(len(b), k_max + 1 - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def log_xi(params: Parameters) -> float:
    """log of the coefficient-size rate from the pigeonhole bound (float
    precision is fine: this only scales a reported measurement)."""
    a, N = params.a, params.N
    w = float(params.omega)
    W = float(params.Omega)
    r = float(params.r)
    num = w * math.log(2) + 2 * w * w + w * w * math.log(a + 1) + 0.5 * W * W * math.log(r)
    return num / (a / N - w)


def construct_Fn(params: Parameters, n: int) -> FnRepresentation:
    """Build the system, solve it, and double-check every required property
    via independent code paths."""
    system = build_system(params, n)
    c_flat = solve_small(system)
    nN = n // params.N
    c = [c_flat[i * (nN + 1) : (i + 1) * (nN + 1)] for i in range(params.a)]
    if not any(any(row) for row in c):
        raise AssertionError("solver returned the zero vector")
    omega_n = int(params.omega * n)
    fn = FnRepresentation(
        params=params,
        n=n,
        c=c,
        bn=max(i for i in range(1, params.a + 1) if any(c[i - 1])),
        max_abs=max(abs(v) for row in c for v in row),
        l2_norm_sq=sum(v * v for row in c for v in row),
        log10_X=system.log10_X(),
        xi_envelope_ratio=0.0,
    )
    # independent vanishing check: power-series route, not the binomial route
    series = fn.taylor_coeffs_series(omega_n - 1)
    if any(series):
        raise AssertionError("Taylor coefficients below omega*n failed to vanish")
    lx = log_xi(params) * n
    fn.xi_envelope_ratio = math.log(fn.max_abs) / lx if fn.max_abs > 1 and lx > 0 else 0.0
    return fn
