"""End-to-end acceptance checks; each prints a PASS/FAIL line in the run summary."""
import json
import random
import time
from fractions import Fraction as F

import pytest

from primeprod import qseries
from primeprod.arith import dirichlet_inverse, euler_phi, h_sequence, moebius
from primeprod.cli import main
from primeprod.congruence import IntMatrix, arnold_divisor_sum, power_sums_of_matrix, verify_trace_congruence
from primeprod.evaluate import evaluate_constant, make_plan, truncation_bound
from primeprod.expand import (
    ALL_MINUS,
    ExponentSequence,
    SignSequence,
    exponents_from_g,
    exponents_moebius,
    partition_sum_b,
    reconstruct_b,
    rewrite_adaptive,
)
from primeprod.funcs import builtin, parse, taylor
from primeprod.mpreal import as_fraction, context, digits_to_bits, partial_zeta, zeta_int

A1_50 = "0.54685595528047446684551710099076178991021048592974"
C_50 = "0.71380993049991415224401060402799291827213336525147"
EARLIER_C = F("0.7138067")


def eval_cli(capsys, name, digits=50):
    t0 = time.perf_counter()
    code = main(["eval", "--builtin", name, "--digits", str(digits), "--json"])
    elapsed = time.perf_counter() - t0
    rec = json.loads(capsys.readouterr().out)
    return code, rec, elapsed


def first_significant(value: str, n: int) -> str:
    digits = value.replace(".", "").lstrip("0")
    return digits[:n]


@pytest.mark.criterion(1, "A1 to 50 digits via the CLI in under 60 s")
def test_golden_a1(capsys):
    code, rec, elapsed = eval_cli(capsys, "ramanujan-a1")
    assert code == 0
    assert first_significant(rec["value"], 50) == first_significant(A1_50, 50)
    assert rec["certified_digits"] >= 50
    assert elapsed <= 60


@pytest.mark.criterion(2, "c to 50 digits via the CLI in under 60 s")
def test_golden_c(capsys):
    code, rec, elapsed = eval_cli(capsys, "avg-divisor-c")
    assert code == 0
    assert first_significant(rec["value"], 50) == first_significant(C_50, 50)
    assert rec["certified_digits"] >= 50
    assert elapsed <= 60


@pytest.mark.criterion(3, "earlier published c = 0.7138067 is off in the sixth digit")
def test_earlier_value_discrepancy():
    cv = evaluate_constant(builtin("avg-divisor-c"), 30)
    diff = abs(as_fraction(cv.value) - EARLIER_C)
    assert F(1, 10**6) < diff < F(1, 10**5)


@pytest.mark.criterion(4, "exact exponents mu(n)/n and phi(n)/n for n <= 200")
def test_exact_expansions():
    N = 200
    for text, expected in [("exp(-z)", lambda n: F(moebius(n), n)), ("exp(-z/(1-z))", lambda n: F(euler_phi(n), n))]:
        g = qseries.g_from_b(taylor(parse(text), N))
        alpha = exponents_from_g(g, ALL_MINUS, N)
        assert alpha == exponents_moebius(g, N)
        assert all(alpha.alpha(n) == expected(n) for n in range(1, N + 1))


@pytest.mark.criterion(5, "C(0.9, 18, 7, 48) <= 1e-54 and planner picks M <= 48")
def test_planner_bound():
    assert truncation_bound(F(9, 10), 18, 17, 48) <= F(1, 10**54)
    plan = make_plan(F(9, 10), 18, 7, 50)
    assert plan.M <= 48
    assert plan.C <= F(1, 10**53)


@pytest.mark.criterion(6, "reconstruct_b(exponents_from_g(g_from_b(b))) == b, 100 random cases; partition sums agree")
def test_oracle_equivalence():
    rng = random.Random(6)
    N = 25
    for _ in range(100):
        b = qseries.RationalSeries.of([1] + [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(N)])
        eps = SignSequence.explicit([rng.choice((1, -1)) for _ in range(N)])
        alpha = exponents_from_g(qseries.g_from_b(b), eps, N)
        assert reconstruct_b(alpha) == b
        for n in range(0, 13):
            assert partition_sum_b(alpha, n) == b[n]


@pytest.mark.criterion(7, "integer polynomials give integer exponents and back")
def test_integrality():
    rng = random.Random(7)
    N = 60
    for _ in range(50):
        k = rng.randint(1, 6)
        # z^k P(1/z) for monic P of degree k: constant term 1, integer coefficients
        b = qseries.RationalSeries.of([1] + [rng.randint(-9, 9) for _ in range(k)] + [0] * (N - k))
        alpha = exponents_moebius(qseries.g_from_b(b), N)
        assert all(a.denominator == 1 for a in alpha.alphas)
    for _ in range(50):
        alpha = ExponentSequence.with_signs([rng.randint(-5, 5) for _ in range(30)], SignSequence.explicit([rng.choice((1, -1)) for _ in range(30)]))
        assert all(c.denominator == 1 for c in reconstruct_b(alpha))


@pytest.mark.criterion(8, "trace congruences on 200 random matrices; divisor sums divisible by n <= 100")
def test_arnold():
    rng = random.Random(8)
    failures = 0
    for _ in range(200):
        k = rng.randint(1, 4)
        A = IntMatrix(tuple(tuple(rng.randint(-9, 9) for _ in range(k)) for _ in range(k)))
        for p in (2, 3, 5, 7):
            failures += not verify_trace_congruence(A, p, 4).all_pass
        q = power_sums_of_matrix(A, 100)
        failures += sum(arnold_divisor_sum(q, n) % n != 0 for n in range(1, 101))
    assert failures == 0


@pytest.mark.criterion(9, "0 < H_n <= n^2 for n <= 10000 and H is the Dirichlet inverse of J")
def test_h_sequence():
    N = 10_000
    H = h_sequence(N)
    assert all(0 < H[n] <= n * n for n in range(1, N + 1))
    J = [0, 1] + [-1] * (N - 1)
    assert dirichlet_inverse(J, N)[1:] == list(H.values[1:])


@pytest.mark.criterion(10, "zeta(2) = pi^2/6 to 2^(6-P); zeta_7(n) - 1 <= 17^(1-n) for 3 <= n <= 48")
def test_zeta_engine():
    P = digits_to_bits(60)
    ctx = context(P)
    assert abs(zeta_int(2, P) * 6 - ctx.pi() ** 2) <= ctx.ldexp(1, 6 - P)
    for n in range(3, 49):
        z = as_fraction(partial_zeta(7, n, P))
        assert z - 1 <= F(1, 17 ** (n - 1))


@pytest.mark.criterion(11, "A1 with m = 7 and m = 8 agree to the certified digits")
def test_plan_independence():
    spec = builtin("ramanujan-a1")
    a, b = evaluate_constant(spec, 50, m=7), evaluate_constant(spec, 50, m=8)
    digits = min(a.decimal_digits_certified, b.decimal_digits_certified)
    va, vb = as_fraction(a.value), as_fraction(b.value)
    assert abs(va - vb) / va <= F(1, 10**digits)


@pytest.mark.criterion(12, "adaptive signs give nonnegative exponents and the same series")
def test_adaptive_signs():
    rng = random.Random(12)
    N = 24
    for _ in range(50):
        hat = ExponentSequence.with_signs([F(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(N)], ALL_MINUS)
        alpha = rewrite_adaptive(hat)
        assert all(a >= 0 for a in alpha.alphas)
        assert reconstruct_b(alpha) == reconstruct_b(hat)
