"""Randomized check of the trace congruences tr A^(p^m) = tr A^(p^(m-1)) mod p^m.

Also checks that sum_{d|n} tr(A^d) mu(n/d) is divisible by n.

    python scripts/arnold_sweep.py --count 500 --k 5 --seed 1
"""
import argparse
import random
import time

from primeprod.congruence import IntMatrix, arnold_divisor_sum, power_sums_of_matrix, verify_trace_congruence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--k", type=int, default=4, help="largest matrix dimension")
    ap.add_argument("--entries", type=int, default=9, help="entries drawn from [-E, E]")
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--nmax", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    checked = failed = 0
    for _ in range(args.count):
        k = rng.randint(1, args.k)
        A = IntMatrix(tuple(tuple(rng.randint(-args.entries, args.entries) for _ in range(k)) for _ in range(k)))
        for p in args.primes:
            report = verify_trace_congruence(A, p, args.kmax)
            checked += len(report.checks)
            for c in report.checks:
                if not c.ok:
                    failed += 1
                    print(f"FAIL p={p} m={c.m} A={A.rows}")
        q = power_sums_of_matrix(A, args.nmax)
        for n in range(1, args.nmax + 1):
            checked += 1
            if arnold_divisor_sum(q, n) % n:
                failed += 1
                print(f"FAIL divisor sum n={n} A={A.rows}")
    print(f"{checked} congruences checked, {failed} failures, {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
