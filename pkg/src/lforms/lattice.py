"""Exact integer lattice tools: all-integer LLL, integer kernels, enumeration.

Everything is plain Python int arithmetic.  The LLL is the classical
all-integer variant (Gram determinants d_i and scaled Gram-Schmidt
coefficients lambda_{ij} kept in Z), which avoids rational normalization
costs and floating-point failure modes on the large entries produced by the
construction systems.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "dot",
    "norm_sq",
    "lll_reduce",
    "kernel_of_int_rows",
    "rational_kernel_basis",
    "enumerate_shortest",
    "gram_schmidt_check",
]


def dot(u: list[int], v: list[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def norm_sq(u: list[int]) -> int:
    return sum(a * a for a in u)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b (b > 0); ties toward +infinity."""
    return (2 * a + b) // (2 * b)


def lll_reduce(basis: list[list[int]], delta: tuple[int, int] = (99, 100)) -> list[list[int]]:
    """LLL-reduce a list of linearly independent integer vectors in place of
    a copy; returns the reduced basis (same lattice, unimodular row ops only).
    """
    b = [list(v) for v in basis]
    m = len(b)
    if m <= 1:
        return b
    p_num, p_den = delta
    lam = [[0] * m for _ in range(m)]
    d = [0] * (m + 1)
    d[0] = 1
    d[1] = norm_sq(b[0])
    if d[1] == 0:
        raise ValueError("zero vector in basis")

    def redi(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            bk, bl = b[k], b[l]
            for idx in range(len(bk)):
                bk[idx] -= q * bl[idx]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_ = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lam_ * lam_) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_ * t) // d[k]
            lam[i][k - 1] = (bb * t + lam_ * lam[i][k]) // d[k + 1]
        d[k] = bb

    k = 1
    kmax = 0
    while k < m:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("linearly dependent input to LLL")
                    d[k + 1] = u
        while True:
            redi(k, k - 1)
            if p_den * (d[k - 1] * d[k + 1] + lam[k][k - 1] ** 2) < p_num * d[k] * d[k]:
                swapi(k, kmax)
                k = max(k - 1, 1)
                if k > kmax:
                    break
                continue
            break
        for l in range(k - 2, -1, -1):
            redi(k, l)
        k += 1
    return b


def gram_schmidt_check(basis: list[list[int]], delta: tuple[int, int] = (99, 100)) -> bool:
    """Exact verification (Fractions) that a basis is LLL-reduced."""
    m = len(basis)
    gs: list[list[Fraction]] = []
    mu: list[list[Fraction]] = [[Fraction(0)] * m for _ in range(m)]
    for i, v in enumerate(basis):
        w = [Fraction(x) for x in v]
        for j in range(i):
            denom = sum(x * x for x in gs[j])
            mu[i][j] = sum(Fraction(a) * bj for a, bj in zip(v, gs[j])) / denom
            w = [x - mu[i][j] * y for x, y in zip(w, gs[j])]
        gs.append(w)
    for i in range(m):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    dlt = Fraction(delta[0], delta[1])
    for k in range(1, m):
        lhs = sum(x * x for x in gs[k]) + mu[k][k - 1] ** 2 * sum(x * x for x in gs[k - 1])
        if lhs < dlt * sum(x * x for x in gs[k - 1]):
            return False
    return True


def _eliminate_row(constraint_values: list[int], basis: list[list[int]]) -> list[list[int]]:
    """Unimodular column reduction leaving at most one vector with a nonzero
    pairing against the constraint; that vector is dropped.

    Uses balanced quotient steps (always reduce the largest pairing by the
    second largest) so entry growth stays additive.
    """
    v = list(constraint_values)
    nz = [i for i, x in enumerate(v) if x]
    while len(nz) > 1:
        nz.sort(key=lambda i: abs(v[i]), reverse=True)
        i_big, i_sec = nz[0], nz[1]
        q = _round_div(v[i_big], v[i_sec]) if v[i_sec] > 0 else -_round_div(v[i_big], -v[i_sec])
        v[i_big] -= q * v[i_sec]
        big, sec = basis[i_big], basis[i_sec]
        for idx in range(len(big)):
            big[idx] -= q * sec[idx]
        nz = [i for i in nz if v[i]]
    return [b for i, b in enumerate(basis) if not v[i]]


def kernel_of_int_rows(
    rows: list[list[int]], L: int, reduce_every: int = 6, final_reduce: bool = True
) -> list[list[int]]:
    """Basis of the integer kernel {x in Z^L : row . x = 0 for every row}.

    Constraints are folded in one at a time by unimodular elimination on a
    running basis (started at the identity), with periodic LLL passes to keep
    the entries small.  The result spans the full kernel lattice exactly.
    """
    basis = [[1 if i == j else 0 for j in range(L)] for i in range(L)]
    for idx, row in enumerate(rows):
        vals = [dot(row, b) for b in basis]
        if any(vals):
            basis = _eliminate_row(vals, basis)
        if reduce_every and (idx + 1) % reduce_every == 0 and basis:
            basis = lll_reduce(basis)
    if final_reduce and basis:
        basis = lll_reduce(basis)
    return basis


def rational_kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Right kernel of a rational matrix by Gaussian elimination; returns the
    standard free-column basis (exact Fractions)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    nrows = len(mat)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        out.append(vec)
    return out


def enumerate_shortest(basis: list[list[int]], limit: int = 2_000_000) -> list[int] | None:
    """Shortest nonzero vector by exact Fincke-Pohst enumeration.

    Intended for rank <= 4 instances where certified optimality is wanted;
    returns None if the search space exceeds `limit` nodes.
    """
    m = len(basis)
    if m == 0:
        return None
    red = lll_reduce(basis) if m > 1 else [list(basis[0])]
    gs: list[list[Fraction]] = []
    mu = [[Fraction(0)] * m for _ in range(m)]
    for i, v in enumerate(red):
        w = [Fraction(x) for x in v]
        for j in range(i):
            denom = sum(x * x for x in gs[j])
            mu[i][j] = sum(Fraction(a) * bj for a, bj in zip(v, gs[j])) / denom
            w = [x - mu[i][j] * y for x, y in zip(w, gs[j])]
        gs.append(w)
    gs_norm = [sum(x * x for x in w) for w in gs]
    best_vec = min(red, key=norm_sq)
    best = Fraction(norm_sq(best_vec))
    coeffs = [0] * m
    nodes = 0

    def recurse(level: int, partial: Fraction) -> None:
        nonlocal best, best_vec, nodes
        if level < 0:
            if any(coeffs):
                vec = [0] * len(red[0])
                for c, bv in zip(coeffs, red):
                    if c:
                        for idx in range(len(vec)):
                            vec[idx] += c * bv[idx]
                nsq = norm_sq(vec)
                if 0 < nsq < best:
                    best = Fraction(nsq)
                    best_vec = vec
            return
        center = -sum(mu[i][level] * coeffs[i] for i in range(level + 1, m))
        budget = (best - partial) / gs_norm[level]
        if budget < 0:
            return
        c0 = (center + Fraction(1, 2)).__floor__()  # nearest integer to center
        if (c0 - center) ** 2 > budget:
            lo, hi = 1, 0
        else:
            lo = c0
            while (lo - 1 - center) ** 2 <= budget:
                lo -= 1
            hi = c0
            while (hi + 1 - center) ** 2 <= budget:
                hi += 1
        for cc in range(lo, hi + 1):
            nodes += 1
            if nodes > limit:
                raise _EnumerationOverflow
            coeffs[level] = cc
            add = (cc - center) ** 2 * gs_norm[level]
            if partial + add <= best:
                recurse(level - 1, partial + add)
        coeffs[level] = 0

    try:
        recurse(m - 1, Fraction(0))
    except _EnumerationOverflow:
        return None
    return best_vec


class _EnumerationOverflow(Exception):
    pass
