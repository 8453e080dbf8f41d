"""Exponents of the product decomposition f(z) = f(0) prod_n (1 + eps_n z^n)^alpha_n.

Everything is exact. Given g_n (f'/f = sum g_n z^(n-1)), the alphas solve

    -g_n = sum_{d | n} d alpha_d (-eps_d)^(n/d)

obtained by expanding eps n alpha z^(n-1) / (1 + eps z^n) geometrically. The
system is triangular with coefficient -eps_n n on alpha_n, so the solution is
unique. For eps = -1 every sign is +1 and Moebius inversion gives
n alpha_n = -sum_{d|n} g_d mu(n/d).
Two independent routes back to the Taylor coefficients (``reconstruct_b`` by
multiplying binomial series, ``partition_sum_b`` by summing over partitions)
serve as oracles.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import qseries
from .arith import divisors, moebius_table
from .qseries import RationalSeries, gcoef


class Strategy(enum.Enum):
    ALL_MINUS = "minus"
    ALL_PLUS = "plus"
    ADAPTIVE = "adaptive"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SignSequence:
    """eps_1, eps_2, ... each +1 or -1, given by a fixed strategy or explicitly."""

    strategy: Strategy
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1 or -1: {self.signs}")
        if self.strategy is Strategy.EXPLICIT and not self.signs:
            raise ValueError("explicit sign sequence needs signs")

    @classmethod
    def explicit(cls, signs: Sequence[int]) -> "SignSequence":
        return cls(Strategy.EXPLICIT, tuple(int(s) for s in signs))

    def __call__(self, n: int) -> int:
        if self.strategy is Strategy.ALL_MINUS:
            return -1
        if self.strategy is Strategy.ALL_PLUS:
            return 1
        if self.strategy is Strategy.ADAPTIVE:
            raise ValueError("adaptive signs are only known after rewriting")
        return self.signs[n - 1]


ALL_MINUS = SignSequence(Strategy.ALL_MINUS)
ALL_PLUS = SignSequence(Strategy.ALL_PLUS)
ADAPTIVE = SignSequence(Strategy.ADAPTIVE)


@dataclass(frozen=True)
class ExponentSequence:
    """alpha_1..alpha_M with the resolved signs eps_1..eps_M (both 1-based via ``alpha``/``eps``)."""

    alphas: tuple[Fraction, ...]
    signs: tuple[int, ...]
    strategy: Strategy = Strategy.EXPLICIT

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(Fraction(a) for a in self.alphas))
        if len(self.alphas) != len(self.signs):
            raise ValueError("alphas and signs differ in length")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def with_signs(cls, alphas, eps: SignSequence) -> "ExponentSequence":
        alphas = tuple(alphas)
        signs = tuple(eps(n) for n in range(1, len(alphas) + 1))
        return cls(alphas, signs, eps.strategy)

    @property
    def order(self) -> int:
        return len(self.alphas)

    def alpha(self, n: int) -> Fraction:
        return self.alphas[n - 1]

    def eps(self, n: int) -> int:
        return self.signs[n - 1]


def _signed_pow(base: int, e: int) -> int:
    # (-eps)^e for eps = +-1
    return 1 if base == 1 or e % 2 == 0 else -1


def exponents_from_g(g: RationalSeries, eps: SignSequence, M: int) -> ExponentSequence:
    """Solve the divisor-sum system for alpha_1..alpha_M in ascending order."""
    if g.order < M - 1:
        raise ValueError(f"g known to index {g.order + 1}, need {M}")
    if eps.strategy is Strategy.ADAPTIVE:
        return rewrite_adaptive(exponents_from_g(g, ALL_MINUS, M))
    signs = [eps(n) for n in range(1, M + 1)]
    alpha = [Fraction(0)] * (M + 1)
    for n in range(1, M + 1):
        s = -gcoef(g, n)
        for d in divisors(n)[:-1]:
            if alpha[d]:
                s -= d * alpha[d] * _signed_pow(-signs[d - 1], n // d)
        alpha[n] = s / (-signs[n - 1] * n)
    return ExponentSequence(tuple(alpha[1:]), tuple(signs), eps.strategy)


def exponents_moebius(g: RationalSeries, M: int) -> ExponentSequence:
    """The eps = -1 case in closed form: n alpha_n = -sum_{d|n} g_d mu(n/d)."""
    if g.order < M - 1:
        raise ValueError(f"g known to index {g.order + 1}, need {M}")
    mu = moebius_table(M)
    alphas = []
    for n in range(1, M + 1):
        s = Fraction(0)
        for d in divisors(n):
            if mu[n // d]:
                s += gcoef(g, d) * mu[n // d]
        alphas.append(-s / n)
    return ExponentSequence(tuple(alphas), (-1,) * M, Strategy.ALL_MINUS)


def rewrite_adaptive(alpha_hat: ExponentSequence) -> ExponentSequence:
    """Re-sign an all-minus decomposition so every exponent is nonnegative.

    Uses (1 - z^n)^w = (1 + z^n)^(-w) (1 - z^(2n))^w: a negative w_n flips
    eps_n to +1 and is pushed onto w_(2n). A zero exponent keeps eps_n = -1.
    """
    if any(s != -1 for s in alpha_hat.signs):
        raise ValueError("rewrite_adaptive expects an all-minus sequence")
    M = alpha_hat.order
    w = list(alpha_hat.alphas)
    alphas, signs = [], []
    for n in range(1, M + 1):
        wn = w[n - 1]
        if wn >= 0:
            signs.append(-1)
            alphas.append(wn)
        else:
            signs.append(1)
            alphas.append(-wn)
            if 2 * n <= M:
                w[2 * n - 1] += wn
    return ExponentSequence(tuple(alphas), tuple(signs), Strategy.ADAPTIVE)


def reconstruct_b(alpha: ExponentSequence, order: int | None = None) -> RationalSeries:
    """Taylor coefficients of prod_{k<=M} (1 + eps_k z^k)^alpha_k to order M.

    Factors with k > M only touch z^(M+1) and beyond, so truncating the
    product at M is exact to that order.
    """
    M = alpha.order if order is None else order
    acc = RationalSeries.constant(1, M)
    for k in range(1, min(M, alpha.order) + 1):
        a = alpha.alpha(k)
        if not a:
            continue
        base = RationalSeries.of({0: 1, k: alpha.eps(k)}.get(i, 0) for i in range(M + 1))
        acc = qseries.mul(acc, qseries.pow(base, a))
    return acc


def binomial(a: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(a, k) = prod_{j<k} (a - j) / k!."""
    num = Fraction(1)
    for j in range(k):
        num *= a - j
    return num / factorial(k)


def _partitions(n: int, largest: int):
    """Multiplicity maps {part: count} of partitions of n with parts <= largest."""
    if n == 0:
        yield {}
        return
    for part in range(min(n, largest), 0, -1):
        for count in range(n // part, 0, -1):
            for rest in _partitions(n - part * count, part - 1):
                d = dict(rest)
                d[part] = count
                yield d


def partition_sum_b(alpha: ExponentSequence, n: int) -> Fraction:
    """b_n as a sum over partitions k_1 + 2 k_2 + ... + n k_n = n."""
    if n > alpha.order:
        raise ValueError(f"need alpha to order {n}")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for mult in _partitions(n, n):
        term = Fraction(1)
        for i, k in mult.items():
            term *= binomial(alpha.alpha(i), k) * alpha.eps(i) ** k
            if not term:
                break
        total += term
    return total


def growth_bound_check(g: RationalSeries, alpha: ExponentSequence) -> bool:
    """|alpha_n| <= n * sum_{k<=n} |g_k| for every n up to the common order."""
    M = min(alpha.order, g.order + 1)
    partial = Fraction(0)
    for n in range(1, M + 1):
        partial += abs(gcoef(g, n))
        if abs(alpha.alpha(n)) > n * partial:
            return False
    return True


def divisor_identity_holds(g: RationalSeries, alpha: ExponentSequence) -> bool:
    """Re-check -g_n = sum_{d|n} d alpha_d (-eps_d)^(n/d) for n <= M."""
    for n in range(1, alpha.order + 1):
        s = sum(d * alpha.alpha(d) * _signed_pow(-alpha.eps(d), n // d) for d in divisors(n))
        if s != -gcoef(g, n):
            return False
    return True
