"""Integer number-theory kernel.

Arithmetic sequences here are 1-indexed: a list ``a`` of length N+1 holds
a_1..a_N in ``a[1:]`` and ``a[0]`` is an unused placeholder (kept at 0).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import DomainError, RangeError


@dataclass(frozen=True)
class PrimeTable:
    primes: tuple[int, ...]
    limit: int

    def __len__(self):
        return len(self.primes)

    def __contains__(self, n):
        from bisect import bisect_left

        i = bisect_left(self.primes, n)
        return i < len(self.primes) and self.primes[i] == n


def sieve(limit: int) -> PrimeTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return PrimeTable(tuple(i for i, f in enumerate(flags) if f), limit)


def nth_prime(table: PrimeTable, k: int) -> int:
    """The k-th prime (p_1 = 2)."""
    if not 1 <= k <= len(table.primes):
        raise RangeError(f"prime index {k} outside table of {len(table.primes)} primes")
    return table.primes[k - 1]


def first_primes(count: int) -> PrimeTable:
    """A table holding at least ``count`` primes."""
    limit = 32
    while True:
        t = sieve(limit)
        if len(t) >= count:
            return t
        limit *= 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def moebius_table(N: int) -> list[int]:
    """mu(0..N) by a linear sieve; mu[0] is a placeholder."""
    mu = [1] * (N + 1)
    mu[0] = 0
    is_comp = bytearray(N + 1)
    primes: list[int] = []
    for i in range(2, N + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > N:
                break
            is_comp[i * p] = 1
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def dirichlet_convolve(a, b, N: int) -> list:
    """(a*b)_n = sum_{d|n} a_d b_{n/d} for n = 1..N."""
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        ad = a[d]
        if not ad:
            continue
        for k in range(1, N // d + 1):
            out[d * k] += ad * b[k]
    return out


def dirichlet_inverse(a, N: int) -> list:
    """Sequence b with a*b = E (E_1 = 1, E_n = 0 otherwise).

    Stays in integers when a_1 = +-1, otherwise returns Fractions.
    """
    if not a[1]:
        raise DomainError("a_1 = 0 has no Dirichlet inverse")
    unit = a[1] in (1, -1)
    a1 = int(a[1]) if unit else Fraction(a[1])
    acc = [0] * (N + 1)  # acc[n] = sum_{d|n, d>1} a_d b_{n/d} from known b
    b = [0] * (N + 1)
    for n in range(1, N + 1):
        e = 1 if n == 1 else 0
        b[n] = (e - acc[n]) * a1 if unit else (e - acc[n]) / a1
        bn = b[n]
        if not bn:
            continue
        for d in range(2, N // n + 1):
            if a[d]:
                acc[n * d] += a[d] * bn
    return b


@dataclass(frozen=True)
class HSequence:
    values: tuple[int, ...]  # values[n] = H_n, values[0] unused

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    @property
    def N(self) -> int:
        return len(self.values) - 1


def h_sequence(N: int) -> HSequence:
    """H_1 = 1, H_n = sum of H_d over proper divisors d of n; checks 0 < H_n <= n^2."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    H = [0] * (N + 1)
    H[1] = 1
    # push each finished H_d to its proper multiples
    for d in range(1, N + 1):
        if not 0 < H[d] <= d * d:
            raise AssertionError(f"H_{d} = {H[d]} violates 0 < H_n <= n^2")
        for m in range(2 * d, N + 1, d):
            H[m] += H[d]
    return HSequence(tuple(H))


_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact B_n with B_1 = -1/2, from sum_{k=0}^{n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if n > 1 and n % 2:
        return Fraction(0)
    with _bern_lock:
        B = _bern_cache
        for m in range(len(B), n + 1):
            if m > 1 and m % 2:
                B.append(Fraction(0))
                continue
            s = sum(comb(m + 1, k) * B[k] for k in range(m) if B[k])
            B.append(-s / (m + 1))
        return B[n]
