"""Certified evaluation of prod_{k>=1} f(1/p_k) for f(0) = 1, f'(0) = 0.

With f(z) = prod_{n>=2} (1 - z^n)^alpha_n the tail of the Euler product
collapses into partial zeta values,

    prod_{k>=m} f(1/p_k) = prod_{n>=2} zeta_m(n)^(-alpha_n),

and cutting this at n = M costs a relative error of at most

    C(R, B, m, M) = (e - 1) B p_m / ((R p_m - 1) (R p_m)^M)   (when C <= 1),

where B bounds |f'/f| on |z| = R and R p_m > 1. The first m - 1 primes are
multiplied in directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import qseries
from .arith import PrimeTable, first_primes, nth_prime
from .errors import DomainError, PlanError, ValidationError
from .expand import ExponentSequence, exponents_moebius
from .funcs import ConstantSpec, Expr, eval_point, size, taylor
from .mpreal import ZetaTable, context, digits_to_bits, to_decimal, zeta_table

# rational upper bound for e - 1 = 1.718281828..., keeps C a rigorous bound
E_MINUS_1_UPPER = Fraction(17183, 10000)
DEFAULT_GUARD_DIGITS = 10


def truncation_bound(R, B, pm: int, M: int) -> Fraction:
    """C(R, B, m, M) as an exact rational upper bound."""
    R, B = Fraction(R), Fraction(B)
    Rp = R * pm
    return E_MINUS_1_UPPER * B * pm / ((Rp - 1) * Rp**M)


def working_precision(target_digits: int, M: int, m: int, guard_digits: int = DEFAULT_GUARD_DIGITS) -> int:
    """Bits for a D-digit result: (D + guard + ceil(log10(M m))) decimal digits."""
    extra = math.ceil(math.log10(max(M * m, 1)))
    return digits_to_bits(target_digits + guard_digits + extra)


@dataclass(frozen=True)
class EvaluationPlan:
    R: Fraction
    B: Fraction
    m: int
    M: int
    C: Fraction
    target_digits: int
    working_precision: int
    pm: int

    def as_dict(self) -> dict:
        return {
            "R": str(self.R),
            "B": str(self.B),
            "m": self.m,
            "M": self.M,
            "C": format_bound(self.C),
        }


def format_bound(q: Fraction) -> str:
    """Scientific notation rounded up in the last place, so a bound stays a bound."""
    if q == 0:
        return "0"
    k = _floor_neg_log10(q)  # 10^-(k+1) < q <= 10^-k
    mant = q * Fraction(10) ** (k + 1)  # in (1, 10]
    digits = math.ceil(mant * 10**5)
    if digits >= 10**6:
        digits //= 10
        k -= 1
    text = str(digits)
    return f"{text[0]}.{text[1:]}e{-(k + 1):+d}"


def _floor_neg_log10(t: Fraction) -> int:
    """Largest integer k with 10^k * t <= 1, i.e. floor(-log10 t) for t > 0."""
    k = -len(str(t.numerator)) + len(str(t.denominator)) - 1
    while Fraction(10) ** (k + 1) * t <= 1:
        k += 1
    while Fraction(10) ** k * t > 1:
        k -= 1
    return k


def make_plan(R, B, m: int, target_digits: int, primes: PrimeTable | None = None,
              guard_digits: int = DEFAULT_GUARD_DIGITS) -> EvaluationPlan:
    """Smallest M > m with C(R, B, m, M) <= 10^-(target_digits + 3).

    B = 0 is accepted for f'/f identically zero; then C = 0.
    """
    R, B = Fraction(R), Fraction(B)
    if not 0 < R <= 1:
        raise PlanError(f"need 0 < R <= 1, got {R}")
    if B < 0:
        raise PlanError(f"need B >= 0, got {B}")
    if target_digits < 1:
        raise PlanError(f"need at least one target digit, got {target_digits}")
    if m < 1:
        raise PlanError(f"need m >= 1, got {m}")
    primes = primes or first_primes(m)
    pm = nth_prime(primes, m)
    if R * pm <= 1:
        raise PlanError(f"R * p_m = {R * pm} <= 1: the method needs a larger m")
    goal = Fraction(1, 10 ** (target_digits + 3))
    M = max(m + 1, 2)
    while truncation_bound(R, B, pm, M) > min(goal, Fraction(1)):
        M += 1
    C = truncation_bound(R, B, pm, M)
    return EvaluationPlan(R, B, m, M, C, target_digits, working_precision(target_digits, M, m, guard_digits), pm)


@dataclass(frozen=True)
class CertifiedValue:
    value: object  # mpf at plan.working_precision
    relative_truncation_bound: Fraction
    rounding_budget: Fraction
    decimal_digits_certified: int
    plan: EvaluationPlan | None = None

    def decimal(self, extra_digits: int = 2) -> str:
        return to_decimal(self.value, max(self.decimal_digits_certified, 0) + extra_digits, "nearest")


def certified_digits(relative_error: Fraction) -> int:
    if relative_error <= 0:
        raise ValueError("need a positive error bound")
    return _floor_neg_log10(relative_error) - 1


def tail_product(alpha: ExponentSequence, table: ZetaTable):
    """prod_{n=2}^{M} zeta_m(n)^(-alpha_n), as exp(-sum alpha_n ln zeta_m(n))."""
    if alpha.order < table.M:
        raise ValueError(f"need alpha to order {table.M}, have {alpha.order}")
    if any(alpha.eps(n) != -1 for n in range(1, table.M + 1)):
        raise ValueError("the zeta tail needs the all-minus decomposition")
    ctx = context(table.prec)
    s = ctx.real(0)
    for n in range(2, table.M + 1):
        a = alpha.alpha(n)
        if a:
            s += ctx.real(a) * ctx.ln(table[n])
    return ctx.exp(-s)


def head_product(f: Expr, m: int, prec: int, primes: PrimeTable | None = None):
    """prod_{k<m} f(1/p_k) by direct evaluation."""
    primes = primes or first_primes(m)
    ctx = context(prec)
    acc = ctx.real(1)
    for k in range(1, m):
        v = eval_point(f, Fraction(1, nth_prime(primes, k)), prec)
        if not v:
            raise DomainError(f"f vanishes at 1/p_{k}")
        acc *= v
    return acc


def expansion(f: Expr, M: int) -> tuple[qseries.RationalSeries, ExponentSequence]:
    """Taylor coefficients and all-minus exponents of f to order M, checked admissible."""
    b = taylor(f, M)
    if b[0] != 1 or b[1] != 0:
        raise ValidationError(f"need f(0) = 1 and f'(0) = 0, got b_0 = {b[0]}, b_1 = {b[1]}")
    alpha = exponents_moebius(qseries.g_from_b(b), M)
    return b, alpha


def evaluate_constant(spec: ConstantSpec, digits: int, m: int | None = None,
                      guard_digits: int = DEFAULT_GUARD_DIGITS) -> CertifiedValue:
    """prefactor * prod_p f(1/p) with a certified relative error."""
    m = spec.m if m is None else m
    primes = first_primes(max(m, 1))
    spec.validate()
    plan = make_plan(spec.R, spec.B, m, digits, primes, guard_digits)
    P = plan.working_precision
    _, alpha = expansion(spec.f, plan.M)
    value = assemble(spec, alpha, m, P, primes)
    budget = rounding_budget(spec, alpha, plan)
    total = plan.C + budget
    return CertifiedValue(value, plan.C, budget, certified_digits(total), plan)


def assemble(spec: ConstantSpec, alpha: ExponentSequence, m: int, prec: int, primes: PrimeTable | None = None):
    """prefactor * head * tail at ``prec`` bits, with the tail cut at alpha.order."""
    primes = primes or first_primes(max(m, 1))
    table = zeta_table(m, alpha.order, prec, primes)
    return eval_point(spec.prefactor, None, prec) * head_product(spec.f, m, prec, primes) * tail_product(alpha, table)


def rounding_budget(spec: ConstantSpec, alpha: ExponentSequence, plan: EvaluationPlan) -> Fraction:
    """First-order bound on the relative rounding error of the pipeline, doubled.

    u = 2^(2-P) per operation. Each point evaluation costs at most
    size(expr) * u; each ln zeta_m(n) carries an absolute error below 2^(5-P)
    that is amplified by |alpha_n|.
    """
    P = plan.working_precision
    u = Fraction(1, 2 ** (P - 2))
    m, M = plan.m, plan.M
    ops = size(spec.prefactor) + (m - 1) * (size(spec.f) + 1) + 3 * M + 4
    amplified = sum(abs(alpha.alpha(n)) for n in range(2, M + 1)) + M
    return 2 * (ops * u + amplified * Fraction(1, 2 ** (P - 5)))
