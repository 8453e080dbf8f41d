"""Arbitrary-precision reals at an explicit binary precision, plus integer zeta values.

Values are mpmath ``mpf`` numbers owned by a ``RealContext`` of fixed
precision P; each elementary operation is correctly rounded or within one
ulp, i.e. relative error <= 2^(2-P). Contexts are immutable once built, so
they can be shared between threads (mpmath's global ``mp`` is never used).

zeta(n) for integer n >= 2 is summed with Euler-Maclaurin here rather than
taken from mpmath, so that mpmath.zeta stays available as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .arith import PrimeTable, bernoulli, first_primes, nth_prime
from .errors import DomainError

LOG2_10 = math.log2(10)


class RealContext:
    def __init__(self, prec: int):
        if prec < 8:
            raise ValueError(f"precision too small: {prec}")
        self.prec = prec
        self._mp = mpmath.MPContext()
        self._mp.prec = prec

    def __repr__(self):
        return f"RealContext(prec={self.prec})"

    @property
    def eps(self):
        """Guaranteed relative error of one operation, 2^(2-P)."""
        return self._mp.ldexp(self._mp.mpf(1), 2 - self.prec)

    def real(self, x):
        if isinstance(x, Fraction):
            return self._mp.mpf(x.numerator) / x.denominator
        if isinstance(x, float) and not x.is_integer():
            raise TypeError("refusing to lift a float; pass a Fraction or string")
        return self._mp.mpf(x)

    def add(self, x, y):
        return self.real(x) + self.real(y)

    def sub(self, x, y):
        return self.real(x) - self.real(y)

    def mul(self, x, y):
        return self.real(x) * self.real(y)

    def div(self, x, y):
        y = self.real(y)
        if not y:
            raise ZeroDivisionError("division by zero")
        return self.real(x) / y

    def neg(self, x):
        return -self.real(x)

    def sqrt(self, x):
        x = self.real(x)
        if x < 0:
            raise DomainError(f"sqrt of negative number {self._mp.nstr(x, 10)}")
        return self._mp.sqrt(x)

    def ln(self, x):
        x = self.real(x)
        if x <= 0:
            raise DomainError(f"ln of nonpositive number {self._mp.nstr(x, 10)}")
        return self._mp.ln(x)

    def exp(self, x):
        return self._mp.exp(self.real(x))

    def pow(self, x, r):
        """x^r for rational r: exp(r ln x) when x > 0, exact powers for integer r."""
        r = Fraction(r)
        x = self.real(x)
        if r == 0:
            return self._mp.mpf(1)
        if r.denominator == 1:
            if not x and r < 0:
                raise ZeroDivisionError("negative power of zero")
            return x ** int(r)
        if x <= 0:
            raise DomainError("non-integer power of a nonpositive number")
        return self._mp.exp(self.real(r) * self._mp.ln(x))

    def pi(self):
        return +self._mp.pi

    def e(self):
        return +self._mp.e

    def ldexp(self, x, k: int):
        return self._mp.ldexp(self.real(x), k)

    def round_to(self, x):
        """Round a value from any context to this one."""
        return self._mp.mpf(x)


@lru_cache(maxsize=64)
def context(prec: int) -> RealContext:
    return RealContext(prec)


def digits_to_bits(digits: float) -> int:
    return math.ceil(digits * LOG2_10)


def as_fraction(x) -> Fraction:
    """Exact value of a binary float from any context (or an int/Fraction)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if x < 0:
        return -as_fraction(-x)
    man, exp = x.man_exp  # magnitude only; never round through mpmath's global context
    man, exp = int(man), int(exp)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def to_decimal(x, digits: int, rounding: str = "down") -> str:
    """Decimal string of ``x`` with ``digits`` significant digits.

    Truncates towards zero unless ``rounding == "nearest"``; computed exactly
    from the binary value, so there is no double rounding.
    """
    if digits < 1:
        raise ValueError("need at least one digit")
    q = as_fraction(x)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    e10 = len(str(q.numerator)) - len(str(q.denominator))
    while Fraction(10) ** e10 > q:
        e10 -= 1
    while Fraction(10) ** (e10 + 1) <= q:
        e10 += 1
    shift = digits - 1 - e10
    scaled = q * Fraction(10) ** shift
    n = math.floor(scaled + Fraction(1, 2)) if rounding == "nearest" else math.floor(scaled)
    if len(str(n)) > digits:  # rounding carried into a new leading digit
        n //= 10
        shift -= 1
    s = str(n)
    if shift <= 0:
        return sign + s + "0" * (-shift)
    if shift >= len(s):
        return sign + "0." + "0" * (shift - len(s)) + s
    return sign + s[: len(s) - shift] + "." + s[len(s) - shift :]


def _zeta_em(n: int, work: RealContext):
    """Euler-Maclaurin for zeta(n), n >= 2, at the context's precision.

    zeta(n) = sum_{k<K} k^-n + K^(1-n)/(n-1) + K^-n/2
              + sum_{j>=1} B_2j/(2j)! n(n+1)...(n+2j-2) K^(-n-2j+1)

    For x^-n (completely monotone) the remainder is bounded by the first
    omitted term, so the correction sum stops once a term drops below
    2^-prec. If the terms start growing first, K is doubled.
    """
    mp = work._mp
    prec = work.prec
    K = max(10, math.ceil(prec / (3 * n)))
    tol = mp.ldexp(mp.mpf(1), -prec)
    while True:
        s = mp.fsum(mp.mpf(k) ** (-n) for k in range(1, K))
        Kn = mp.mpf(K) ** (-n)
        s += Kn * K / (n - 1) + Kn / 2
        rising = mp.mpf(n)  # n (n+1) ... (n+2j-2)
        Kpow = Kn / K  # K^(-n-2j+1)
        prev = None
        converged = False
        for j in range(1, 4 * prec):
            if j > 1:
                rising *= (n + 2 * j - 3) * (n + 2 * j - 2)
            Kpow /= K * K if j > 1 else 1
            t = work.real(bernoulli(2 * j) / math.factorial(2 * j)) * rising * Kpow
            if abs(t) < tol:
                converged = True
                break
            if prev is not None and abs(t) > abs(prev):
                break
            s += t
            prev = t
        if converged:
            return s
        K *= 2


def zeta_int(n: int, prec: int):
    """Riemann zeta(n), n >= 2, as a value of ``context(prec)`` with error <= 2^(4-prec)."""
    if n < 2:
        raise DomainError(f"zeta_int needs n >= 2, got {n}")
    work = context(prec + 16)
    return context(prec).round_to(_zeta_em(n, work))


def partial_zeta(m: int, n: int, prec: int, primes: PrimeTable | None = None):
    """zeta_m(n) = zeta(n) prod_{k<m} (1 - p_k^-n), the Euler product from p_m on."""
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    primes = primes or first_primes(m)
    work = context(prec + 16)
    z = _zeta_em(n, work)
    mp = work._mp
    for k in range(1, m):
        p = nth_prime(primes, k)
        z *= 1 - mp.mpf(p) ** (-n)
    return context(prec).round_to(z)


@dataclass(frozen=True)
class ZetaTable:
    m: int
    M: int
    prec: int
    values: tuple  # values[n - 2] = zeta_m(n), n = 2..M

    def __getitem__(self, n: int):
        if not 2 <= n <= self.M:
            raise KeyError(n)
        return self.values[n - 2]


def zeta_table(m: int, M: int, prec: int, primes: PrimeTable | None = None) -> ZetaTable:
    if M < 2:
        raise DomainError(f"need M >= 2, got {M}")
    primes = primes or first_primes(m)
    pm = nth_prime(primes, m)
    ctx = context(prec)
    values = tuple(partial_zeta(m, n, prec, primes) for n in range(2, M + 1))
    # p_m^-n <= zeta_m(n) - 1 <= p_m^(1-n) (n >= 3), checked up to rounding; once
    # p_m^-n drops below 2^-prec the entry may round to exactly 1
    slack = ctx.ldexp(1, 6 - prec)
    for n, v in enumerate(values, start=2):
        lower = ctx.pow(pm, -n)
        if v < 1 or v - 1 < lower * (1 - slack) - slack:
            raise AssertionError(f"zeta_{m}({n}) = {v} is below 1 + p_m^-n")
        if n >= 3 and v - 1 > ctx.pow(pm, 1 - n) * (1 + slack) + slack:
            raise AssertionError(f"zeta_{m}({n}) - 1 exceeds p_m^(1-n)")
    return ZetaTable(m, M, prec, values)
