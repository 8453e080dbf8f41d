"""Truncated power series with exact rational coefficients.

A series of order N stores the coefficients of z^0 .. z^N; everything past
z^N is unknown. Binary operations truncate to the smaller operand order and
nothing ever silently extends precision.

Index convention for logarithmic derivatives: ``g_from_b`` returns the series
of f'/f = sum_{n>=1} g_n z^(n-1), so coefficient ``k`` of that series holds
g_(k+1). ``gcoef`` reads it back with the 1-based index.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ValuationError, ZeroDivisor

Rational = Fraction


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable, order: int | None = None) -> "RationalSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        return cls(tuple(cs + [Fraction(0)] * (order + 1 - len(cs))))

    @classmethod
    def constant(cls, c, order: int) -> "RationalSeries":
        return cls.of([c], order)

    @classmethod
    def z(cls, order: int) -> "RationalSeries":
        return cls.of([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if zero to this order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def evaluate(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        return add(self, _lift(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other, self.order))

    def __rsub__(self, other):
        return sub(_lift(other, self.order), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RationalSeries):
            return div(self, other)
        return scale(self, 1 / Fraction(other))

    def __pow__(self, r):
        return pow(self, r)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                coef = str(c) if (k == 0 or c not in (1, -1)) else ("-" if c < 0 else "")
                terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return (" + ".join(terms) or "0") + f" + O(z^{self.order + 1})"


def _lift(x, order: int) -> RationalSeries:
    if isinstance(x, RationalSeries):
        return x
    return RationalSeries.constant(x, order)


def gcoef(g: RationalSeries, n: int) -> Fraction:
    """g_n from a logarithmic-derivative series (see module docstring)."""
    return g.coeffs[n - 1]


def add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.order, b.order)
    return RationalSeries(tuple(a[k] + b[k] for k in range(n + 1)))


def sub(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.order, b.order)
    return RationalSeries(tuple(a[k] - b[k] for k in range(n + 1)))


def scale(a: RationalSeries, c) -> RationalSeries:
    c = Fraction(c)
    return RationalSeries(tuple(c * x for x in a.coeffs))


def mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.order, b.order)
    # skip the zero prefixes, which are common (z-shifted factors)
    va = a.valuation()
    vb = b.valuation()
    out = [Fraction(0)] * (n + 1)
    if va is None or vb is None:
        return RationalSeries(tuple(out))
    for i in range(va, n + 1 - vb):
        ai = a[i]
        if not ai:
            continue
        for j in range(vb, n + 1 - i):
            out[i + j] += ai * b[j]
    return RationalSeries(tuple(out))


def shift(a: RationalSeries, v: int) -> RationalSeries:
    """Multiply by z^v (v >= 0) keeping the order, or divide by z^-v (v < 0)."""
    if v >= 0:
        if v > a.order:
            return RationalSeries.constant(0, a.order)
        return RationalSeries((Fraction(0),) * v + a.coeffs[: a.order + 1 - v])
    v = -v
    if any(a.coeffs[:v]):
        raise ValuationError(f"series is not divisible by z^{v}")
    return RationalSeries(a.coeffs[v:])


def _reciprocal_unit(b: Sequence[Fraction], n: int) -> list[Fraction]:
    inv0 = 1 / b[0]
    q = [inv0]
    for k in range(1, n + 1):
        s = sum(b[j] * q[k - j] for j in range(1, k + 1) if b[j])
        q.append(-s * inv0)
    return q


def div(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Quotient a/b; common powers of z are cancelled first.

    The result order is min(order(a), order(b)) - valuation(b), since the
    coefficients shifted out of the known range are lost.
    """
    vb = b.valuation()
    if vb is None:
        raise ZeroDivisor("division by a series that is zero to its order")
    va = a.valuation()
    if va is not None and va < vb:
        raise ValuationError(f"numerator has valuation {va} < denominator valuation {vb}")
    n = min(a.order, b.order) - vb
    if n < 0:
        raise ValuationError("no coefficients left after cancelling powers of z")
    an = a.coeffs[vb: vb + n + 1]
    bn = b.coeffs[vb: vb + n + 1]
    inv = _reciprocal_unit(bn, n)
    return mul(RationalSeries(an), RationalSeries(tuple(inv)))


def derivative(a: RationalSeries) -> RationalSeries:
    if a.order == 0:
        return RationalSeries.constant(0, 0)
    return RationalSeries(tuple(k * a[k] for k in range(1, a.order + 1)))


def integrate(a: RationalSeries, c=0) -> RationalSeries:
    return RationalSeries((Fraction(c),) + tuple(a[k] / (k + 1) for k in range(a.order + 1)))


def log(a: RationalSeries) -> RationalSeries:
    """Formal principal logarithm; needs a_0 == 1."""
    if a[0] != 1:
        raise DomainError(f"log needs constant term 1, got {a[0]}")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    # a * l' = a'  =>  k l_k = k a_k - sum_{j=1}^{k-1} j l_j a_{k-j}
    for k in range(1, n + 1):
        s = k * a[k]
        for j in range(1, k):
            if out[j] and a[k - j]:
                s -= j * out[j] * a[k - j]
        out[k] = s / k
    return RationalSeries(tuple(out))


def exp(a: RationalSeries) -> RationalSeries:
    if a[0] != 0:
        raise DomainError(f"exp needs constant term 0, got {a[0]}")
    n = a.order
    y = [Fraction(1)] + [Fraction(0)] * n
    # y' = a' y
    for k in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if a[j]:
                s += j * a[j] * y[k - j]
        y[k] = s / k
    return RationalSeries(tuple(y))


def pow(a: RationalSeries, r) -> RationalSeries:
    """a^r for rational r.

    Non-integer r needs a_0 == 1 (principal branch). Integer r accepts any
    nonzero constant term, and nonnegative integer r also accepts a > 0
    valuation.
    """
    r = Fraction(r)
    n = a.order
    if r == 0:
        return RationalSeries.constant(1, n)
    v = a.valuation()
    if v is None:
        if r > 0:
            return RationalSeries.constant(0, n)
        raise ZeroDivisor("negative power of a zero series")
    if v > 0:
        if r.denominator != 1 or r < 0:
            raise DomainError(f"power {r} of a series with valuation {v}")
        e = int(r)
        u = pow(shift(a, -v), e)
        total = v * e
        if total > n:
            return RationalSeries.constant(0, n)
        return RationalSeries.of((Fraction(0),) * total + u.coeffs, min(n, u.order + total))
    a0 = a[0]
    if a0 == 1:
        y0 = Fraction(1)
    elif r.denominator == 1:
        y0 = a0 ** int(r)
    else:
        raise DomainError(f"power {r} needs constant term 1, got {a0}")
    # J.C.P. Miller: k a_0 y_k = sum_{j=1}^k ((r+1) j - k) a_j y_{k-j}
    y = [y0] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if a[j]:
                s += ((r + 1) * j - k) * a[j] * y[k - j]
        y[k] = s / (k * a0)
    return RationalSeries(tuple(y))


def g_from_b(b: RationalSeries) -> RationalSeries:
    """Coefficients g_1..g_N of f'/f from the Taylor coefficients of f (b_0 == 1).

    Uses n b_n = g_n + sum_{k=1}^{n-1} b_k g_{n-k}.
    """
    if b[0] != 1:
        raise DomainError(f"b_0 must be 1, got {b[0]}")
    if b.order < 1:
        raise DomainError("need at least b_1 to form f'/f")
    N = b.order
    g = [Fraction(0)] * (N + 1)  # g[n] = g_n, g[0] unused
    for n in range(1, N + 1):
        s = n * b[n]
        for k in range(1, n):
            if b[k]:
                s -= b[k] * g[n - k]
        g[n] = s
    return RationalSeries(tuple(g[1:]))


def b_from_g(g: RationalSeries) -> RationalSeries:
    """Inverse of ``g_from_b``: rebuild 1 + b_1 z + ... from g_1..g_N."""
    N = g.order + 1
    b = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        s = gcoef(g, n)
        for k in range(1, n):
            if b[k]:
                s += b[k] * gcoef(g, n - k)
        b[n] = s / n
    return RationalSeries(tuple(b))
