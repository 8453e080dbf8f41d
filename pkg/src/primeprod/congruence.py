"""Power sums, Newton / Girard-Waring identities and trace congruences, in exact integers.

Coefficient lists ``b`` are those of f(z) = 1 + b_1 z + ... = prod_i (1 - x_i z),
stored as ``b[0] = 1, b[1], b[2], ...``. Power sums q_n = sum_i x_i^n are
1-indexed the same way: ``q[0]`` is unused.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Sequence

from .arith import divisors, is_prime, moebius
from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValidationError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.k))

    def power(self, n: int) -> "IntMatrix":
        result = IntMatrix.identity(self.k)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result


@dataclass(frozen=True)
class PowerSums:
    q: tuple  # q[0] unused, q[n] = q_n

    @property
    def N(self) -> int:
        return len(self.q) - 1

    def __getitem__(self, n: int):
        return self.q[n]


def read_matrix(path) -> IntMatrix:
    """Matrix file: first line k, then k lines of k whitespace-separated integers."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        k = int(lines[0])
        rows = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except (IndexError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed matrix file: {exc}") from exc
    if k < 1 or len(rows) != k or any(len(r) != k for r in rows):
        raise ValidationError(f"{path}: expected {k} rows of {k} integers")
    return IntMatrix(tuple(rows))


def trace_power(A: IntMatrix, n: int) -> int:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return A.power(n).trace()


def newton_q_from_b(b: Sequence, N: int) -> PowerSums:
    """q_n + b_1 q_{n-1} + ... + b_{n-1} q_1 + n b_n = 0, solved for q_1..q_N."""
    bb = list(b) + [0] * max(0, N + 1 - len(b))
    q = [0] * (N + 1)
    for n in range(1, N + 1):
        q[n] = -n * bb[n] - sum(bb[k] * q[n - k] for k in range(1, n) if bb[k])
    return PowerSums(tuple(q))


def newton_b_from_q(q: PowerSums) -> list:
    """Inverse of ``newton_q_from_b``; integers stay integers when the data come from one."""
    N = q.N
    b = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        b[n] = -(q[n] + sum(b[k] * q[n - k] for k in range(1, n))) / Fraction(n)
    return [int(x) if x.denominator == 1 else x for x in b]


def _partitions(n: int):
    # multiplicity vectors k[1..n] with sum i k_i = n
    def rec(rem, largest):
        if rem == 0:
            yield {}
            return
        for part in range(min(rem, largest), 0, -1):
            for c in range(rem // part, 0, -1):
                for rest in rec(rem - part * c, part - 1):
                    d = dict(rest)
                    d[part] = c
                    yield d

    return rec(n, n)


def girard_waring_q(b: Sequence, n: int):
    """q_n = n sum (-1)^(k_1+...+k_n) (k_1+...+k_n-1)!/(k_1!...k_n!) b_1^k_1 ... b_n^k_n."""
    bb = list(b) + [0] * max(0, n + 1 - len(b))
    total = Fraction(0)
    for mult in _partitions(n):
        if any(not bb[i] for i in mult):
            continue
        K = sum(mult.values())
        term = Fraction((-1) ** K * factorial(K - 1))
        for i, k in mult.items():
            term = term * Fraction(bb[i]) ** k / factorial(k)
        total += term
    total *= n
    return int(total) if total.denominator == 1 else total


def girard_waring_b(q: PowerSums, n: int):
    """b_n = sum (-1)^(k_1+...+k_n)/(k_1!...k_n!) (q_1/1)^k_1 ... (q_n/n)^k_n."""
    total = Fraction(0)
    for mult in _partitions(n):
        K = sum(mult.values())
        term = Fraction((-1) ** K)
        for i, k in mult.items():
            term = term * (Fraction(q[i]) / i) ** k / factorial(k)
        total += term
    return int(total) if total.denominator == 1 else total


def charpoly_b(A: IntMatrix) -> list[int]:
    """Coefficients of det(I - zA) = 1 + b_1 z + ... + b_k z^k from traces of powers.

    Faddeev-LeVerrier via the Newton identities; exact integer division checks
    the traces along the way.
    """
    k = A.k
    traces = [0]
    P = IntMatrix.identity(k)
    for _ in range(k):
        P = P @ A
        traces.append(P.trace())
    b = newton_b_from_q(PowerSums(tuple(traces)))
    if any(isinstance(x, Fraction) for x in b):
        raise AssertionError("non-integral characteristic polynomial from an integer matrix")
    return b


def power_sums_of_matrix(A: IntMatrix, N: int) -> PowerSums:
    return newton_q_from_b(charpoly_b(A), N)


def arnold_divisor_sum(q: PowerSums, n: int) -> int:
    """sum_{d|n} q_d mu(n/d); divisible by n for integral data."""
    return sum(q[d] * moebius(n // d) for d in divisors(n))


@dataclass(frozen=True)
class CongruenceCheck:
    m: int
    lhs: int  # tr A^(p^m)
    rhs: int  # tr A^(p^(m-1))
    modulus: int

    @property
    def ok(self) -> bool:
        return (self.lhs - self.rhs) % self.modulus == 0


@dataclass(frozen=True)
class TraceReport:
    p: int
    kmax: int
    checks: tuple[CongruenceCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_trace_congruence(A: IntMatrix, p: int, kmax: int) -> TraceReport:
    """Check tr A^(p^m) = tr A^(p^(m-1)) mod p^m for m = 1..kmax."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if kmax < 1:
        raise DomainError(f"need kmax >= 1, got {kmax}")
    checks = []
    prev = A  # A^(p^(m-1))
    for m in range(1, kmax + 1):
        cur = prev.power(p)
        checks.append(CongruenceCheck(m, cur.trace(), prev.trace(), p**m))
        prev = cur
    return TraceReport(p, kmax, tuple(checks))
