"""Exact integer arithmetic helpers: factorization, divisors, Smith normal form.

Factorization is deterministic trial division guarded by a configurable bound;
there is no probabilistic primality anywhere.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

from .errors import DomainError, ResourceError

DEFAULT_FACTOR_BOUND = 10**12


@lru_cache(maxsize=None)
def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, ...]:
    """Prime factors of n with multiplicity, ascending. factorize(1) == ()."""
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    if n > bound:
        raise ResourceError(f"factorize bound exceeded: {n} > {bound}")
    out = []
    m = n
    for p in (2, 3):
        while m % p == 0:
            out.append(p)
            m //= p
    # remaining factors are coprime to 6; step through 6k +- 1
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            while m % p == 0:
                out.append(p)
                m //= p
        f += 6
    if m > 1:
        out.append(m)
    return tuple(out)


def factor_counts(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    counts: dict[int, int] = {}
    for p in factorize(n, bound):
        counts[p] = counts.get(p, 0) + 1
    return counts


def distinct_primes(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, ...]:
    return tuple(dict.fromkeys(factorize(n, bound)))


def radical_int(n: int) -> int:
    """Product of the distinct primes of n; radical_int(0) == 0."""
    if n == 0:
        return 0
    r = 1
    for p in distinct_primes(n):
        r *= p
    return r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise DomainError(f"divisors requires n >= 1, got {n}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return tuple(small + large[::-1])


def valuation(n: int, p: int) -> int:
    """Largest e with p^e | n; requires n != 0."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def divides(d: int, n: int) -> bool:
    """d | n with the 0-aware convention: 0 divides only 0."""
    if d == 0:
        return n == 0
    return n % d == 0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with x*a + y*b == g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def smith_normal_form(rows: list[list[int]], ncols: int) -> tuple[list[int], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (factors, V) where factors is the full-length diagonal with
    d_1 | d_2 | ... (zeros trailing if rank deficient) and V is the accumulated
    ncols x ncols column transform, so the row lattice of the input matrix A
    maps onto the row lattice of diag(factors) under x -> x*V.  Row operations
    do not affect that map and are not tracked.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_cols(j1: int, j2: int) -> None:
        for row in A:
            row[j1], row[j2] = row[j2], row[j1]
        for row in V:
            row[j1], row[j2] = row[j2], row[j1]

    def combine_cols(j1: int, j2: int, a: int, b: int, c: int, d: int) -> None:
        # (col j1, col j2) <- (a c1 + b c2, c c1 + d c2); requires |ad - bc| = 1
        for row in A:
            row[j1], row[j2] = a * row[j1] + b * row[j2], c * row[j1] + d * row[j2]
        for row in V:
            row[j1], row[j2] = a * row[j1] + b * row[j2], c * row[j1] + d * row[j2]

    def reduce_pivot(t: int) -> None:
        # clear column t below the pivot and row t to its right, to fixpoint
        while True:
            for i in range(t + 1, nrows):
                if A[i][t] == 0:
                    continue
                a, b = A[t][t], A[i][t]
                if b % a == 0:
                    q = b // a
                    A[i] = [u - q * v for u, v in zip(A[i], A[t])]
                else:
                    g, x, y = xgcd(a, b)
                    rt, ri = A[t], A[i]
                    A[t] = [x * u + y * v for u, v in zip(rt, ri)]
                    A[i] = [-(b // g) * u + (a // g) * v for u, v in zip(rt, ri)]
            dirty = False
            for j in range(t + 1, ncols):
                if A[t][j] == 0:
                    continue
                a, b = A[t][t], A[t][j]
                if b % a == 0:
                    combine_cols(j, t, 1, -(b // a), 0, 1)
                else:
                    g, x, y = xgcd(a, b)
                    combine_cols(t, j, x, y, -(b // g), a // g)
                    dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, nrows)):
                return

    rank = min(nrows, ncols)
    for t in range(min(nrows, ncols)):
        pivot = next(
            ((i, j) for j in range(t, ncols) for i in range(t, nrows) if A[i][j] != 0),
            None,
        )
        if pivot is None:
            rank = t
            break
        i, j = pivot
        if i != t:
            A[t], A[i] = A[i], A[t]
        if j != t:
            swap_cols(t, j)
        reduce_pivot(t)

    def normalize_signs() -> None:
        for t in range(rank):
            if A[t][t] < 0:
                for row in A:
                    row[t] = -row[t]
                for row in V:
                    row[t] = -row[t]

    normalize_signs()

    # enforce the divisibility chain d_t | d_{t+1}
    t = 0
    while t < rank - 1:
        a, b = A[t][t], A[t + 1][t + 1]
        if b % a != 0:
            A[t] = [u + v for u, v in zip(A[t], A[t + 1])]
            reduce_pivot(t)
            t = max(t - 1, 0)
        else:
            t += 1

    normalize_signs()
    factors = [A[t][t] if t < rank else 0 for t in range(ncols)]
    return factors, V
