"""Dirichlet characters with exact cyclotomic values.

A character mod N is stored through root-of-unity exponents on a fixed CRT
generator set of (Z/NZ)^*, so every value chi(m) is an exact element of
Q(zeta_M) with M = lcm(N, exponent of (Z/NZ)^*).  That single ambient field
also hosts mu = e^{2 i pi/N}, the Fourier coefficients chi^(l) and the Gauss
sums, so no field-crossing coercions are ever needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cyclotomic import CyclotomicField, CyclotomicNumber

__all__ = [
    "DirichletCharacter",
    "UnsupportedForPipelineError",
    "enumerate_characters",
    "reduce_to_primitive",
    "chi_hat",
    "gauss_sum",
    "phi_ell_pairing",
    "parse_selector",
]


class UnsupportedForPipelineError(ValueError):
    """Raised when a character's conductor is excluded by the pipeline
    (conductor 0 or 2 mod 4: no odd primitive modulus exists for it)."""


def _factorize(N: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, N + 1):
        if p * p > N and N > 1:
            out.append((N, 1))
            break
        e = 0
        while N % p == 0:
            N //= p
            e += 1
        if e:
            out.append((p, e))
    return out


def _primitive_root(q: int, p: int) -> int:
    """Smallest primitive root mod q = p^e, p odd prime."""
    phi = q - q // p
    factors = {f for f, _ in _factorize(phi)}
    for g in range(2, q):
        if math.gcd(g, q) != 1:
            continue
        if all(pow(g, phi // f, q) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root found")


@lru_cache(maxsize=None)
def _unit_group(N: int):
    """CRT generator set of (Z/NZ)^*: list of (generator mod N, order),
    sorted by the underlying prime; plus a discrete-log table residue ->
    exponent vector."""
    gens: list[tuple[int, int]] = []
    local: list[tuple[int, int, int]] = []  # (modulus q, local gen, order)
    for p, e in _factorize(N):
        q = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                local.append((q, 3, 2))
            else:
                local.append((q, q - 1, 2))
                local.append((q, 5, 2 ** (e - 2)))
        else:
            local.append((q, _primitive_root(q, p), q - q // p))
    for q, g, order in local:
        # lift: == g mod q, == 1 mod N/q
        rest = N // q
        lifted = _crt(g, q, 1, rest)
        gens.append((lifted, order))
    # discrete logs by full enumeration of the group
    dlog: dict[int, tuple[int, ...]] = {}
    for vec in product(*(range(s) for _, s in gens)):
        m = 1
        for (g, _), e in zip(gens, vec):
            m = m * pow(g, e, N) % N
        dlog[m % N] = vec
    if not gens:
        dlog[1 % N] = ()
    return tuple(gens), dlog


def _crt(a1: int, m1: int, a2: int, m2: int) -> int:
    if m2 == 1:
        return a1 % m1
    g, x, _ = _xgcd(m1, m2)
    assert g == 1
    return (a1 + m1 * ((a2 - a1) * x % m2)) % (m1 * m2)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod N, values as exponents of zeta_M (None off the units)."""

    N: int
    M: int
    exponents: tuple[int, ...]        # chi(g_t) = zeta_M^{exponents[t]}
    val_exp: tuple                    # length N; int in [0, M) or None
    order: int
    conductor: int
    primitive: bool
    parity_eps_chi: int               # chi(-1) = (-1)^parity
    index: int                        # position in enumerate_characters order

    @property
    def epsilon(self) -> int:
        """Opposite parity: the parity of the L-value indices the pipeline targets."""
        return 1 - self.parity_eps_chi

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.M)

    @property
    def label(self) -> str:
        return f"{self.N}:{self.index}"

    @property
    def pipeline_supported(self) -> bool:
        return self.conductor % 4 not in (0, 2)

    def value(self, m: int) -> CyclotomicNumber:
        e = self.val_exp[m % self.N]
        if e is None:
            return self.field.zero
        return self.field.zeta_power(e)

    def value_as_root_exponent(self, m: int) -> Fraction | None:
        """chi(m) = e^{2 i pi q} with q in [0,1), or None when chi(m)=0."""
        e = self.val_exp[m % self.N]
        return None if e is None else Fraction(e, self.M) % 1

    def is_principal(self) -> bool:
        return self.order == 1

    def mu(self, power: int = 1) -> CyclotomicNumber:
        """mu^power with mu = e^{2 i pi/N} inside the ambient field."""
        return self.field.zeta_power((self.M // self.N) * power)

    def conjugate_value(self, m: int) -> CyclotomicNumber:
        e = self.val_exp[m % self.N]
        if e is None:
            return self.field.zero
        return self.field.zeta_power(-e % self.M)

    def __repr__(self):
        kind = "primitive" if self.primitive else f"conductor {self.conductor}"
        par = "odd" if self.parity_eps_chi else "even"
        return f"chi[{self.label}] mod {self.N} ({par}, order {self.order}, {kind})"


def _conductor(N: int, val_exp) -> int:
    for d in sorted(_divisors(N)):
        if all(
            val_exp[m % N] == 0
            for m in range(1, N + 1)
            if m % d == 1 % d and math.gcd(m, N) == 1
        ):
            return d
    return N


def _divisors(N: int) -> list[int]:
    return [d for d in range(1, N + 1) if N % d == 0]


@lru_cache(maxsize=None)
def enumerate_characters(N: int) -> tuple[DirichletCharacter, ...]:
    """All phi(N) characters mod N, ordered by exponent vector on the fixed
    CRT generator set (row-major over the generator orders)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    gens, dlog = _unit_group(N)
    exponent = 1
    for _, s in gens:
        exponent = math.lcm(exponent, s)
    M = math.lcm(N, exponent)
    out = []
    for index, kvec in enumerate(product(*(range(s) for _, s in gens))):
        val_exp: list = [None] * N
        for m, evec in dlog.items():
            val_exp[m] = sum(e * k * (M // s) for e, k, (_, s) in zip(evec, kvec, gens)) % M
        order = 1
        for k, (_, s) in zip(kvec, gens):
            order = math.lcm(order, s // math.gcd(s, k))
        em1 = val_exp[(N - 1) % N]
        parity = 0 if em1 == 0 else 1
        cond = _conductor(N, val_exp)
        chi = DirichletCharacter(
            N=N,
            M=M,
            exponents=tuple(kvec),
            val_exp=tuple(val_exp),
            order=order,
            conductor=cond,
            primitive=(cond == N),
            parity_eps_chi=parity,
            index=index,
        )
        _validate(chi)
        out.append(chi)
    return tuple(out)


def _validate(chi: DirichletCharacter) -> None:
    """Exhaustive residue checks of the character axioms."""
    N = chi.N
    assert chi.val_exp[1 % N] == 0, "chi(1) != 1"
    for m in range(N):
        has_val = chi.val_exp[m] is not None
        assert has_val == (math.gcd(m, N) == 1), "support must be the units"
    for m1 in range(N):
        for m2 in range(N):
            v1, v2, v12 = chi.val_exp[m1], chi.val_exp[m2], chi.val_exp[m1 * m2 % N]
            if v1 is None or v2 is None:
                assert v12 is None
            else:
                assert v12 == (v1 + v2) % chi.M, "multiplicativity fails"
    em1 = chi.val_exp[(N - 1) % N]
    assert (em1 == 0) == (chi.parity_eps_chi == 0)
    if em1 not in (0, None):
        assert (2 * em1) % chi.M == 0, "chi(-1) must be a sign"


def reduce_to_primitive(chi: DirichletCharacter) -> tuple[DirichletCharacter, list[int]]:
    """The primitive character inducing chi, and the primes dividing the
    modulus but not the conductor (the Euler factors relating the L-values).

    Conductors 0 or 2 mod 4 are outside the pipeline (the paper's setting
    requires an odd primitive modulus) and raise UnsupportedForPipelineError.
    """
    c = chi.conductor
    if c % 4 in (0, 2):
        raise UnsupportedForPipelineError(
            f"conductor {c} = {c % 4} mod 4: no odd primitive model exists"
        )
    euler_primes = sorted({p for p, _ in _factorize(chi.N)} - {p for p, _ in _factorize(c)})
    if chi.primitive:
        return chi, []
    for cand in enumerate_characters(c):
        if not cand.primitive:
            continue
        if all(
            cand.value_as_root_exponent(m) == chi.value_as_root_exponent(m)
            for m in range(chi.N)
            if math.gcd(m, chi.N) == 1
        ):
            return cand, euler_primes
    raise AssertionError("no inducing primitive character found")


def chi_hat(chi: DirichletCharacter, ell: int) -> CyclotomicNumber:
    """Fourier coefficient (1/N) sum_m chi(m) mu^{-l m}, exact."""
    N = chi.N
    if not 0 <= ell <= N - 1:
        raise ValueError("ell out of range")
    acc = chi.field.zero
    for m in range(N):
        e = chi.val_exp[m]
        if e is not None:
            acc = acc + chi.field.zeta_power(e - (chi.M // N) * ell * m)
    return acc * Fraction(1, N)


def gauss_sum(chi: DirichletCharacter, ell: int) -> CyclotomicNumber:
    """tau(chi, l) = sum_m chi(m) e^{2 i pi l m / N}, exact."""
    N = chi.N
    if not 0 <= ell <= N - 1:
        raise ValueError("ell out of range")
    acc = chi.field.zero
    for m in range(N):
        e = chi.val_exp[m]
        if e is not None:
            acc = acc + chi.field.zeta_power(e + (chi.M // N) * ell * m)
    return acc


def phi_ell_pairing(chi: DirichletCharacter, ell: int, x) -> CyclotomicNumber:
    """The linear form paired against the chi(m)-block of a candidate kernel
    vector: sum_m (mu^{lm} - mu^{-lm}) x_m when epsilon = 0 (sine form),
    sum_m (mu^{lm} + mu^{-lm}) x_m when epsilon = 1 (cosine form).

    Vanishing is exactly equivalent to vanishing of the real sin/cos form
    (the dropped 1/2i or 1/2 factor is a nonzero constant).  Entries of x may
    be rationals or elements of the character's ambient field.
    """
    N = chi.N
    if len(x) != N:
        raise ValueError(f"x must have length N = {N}")
    sign = 1 if chi.epsilon else -1
    acc = chi.field.zero
    step = chi.M // N
    for m, xm in enumerate(x):
        w = chi.field.zeta_power(step * ell * m) + sign * chi.field.zeta_power(-step * ell * m)
        if isinstance(xm, (int, Fraction)):
            term = w * Fraction(xm)
        else:
            term = w * xm
        acc = acc + term
    return acc


def parse_selector(text: str) -> DirichletCharacter:
    """Resolve a "N:index" selector into its character."""
    try:
        n_str, i_str = text.split(":")
        N, index = int(n_str), int(i_str)
    except ValueError as exc:
        raise ValueError(f"bad character selector {text!r}; expected 'N:index'") from exc
    chars = enumerate_characters(N)
    if not 0 <= index < len(chars):
        raise ValueError(f"index {index} out of range; phi({N}) = {len(chars)}")
    return chars[index]
