"""How tight is H_n <= n^2? Prints the worst ratio log H_n / log n by decade.

H_1 = 1, H_n = sum of H_d over proper divisors d of n (ordered factorizations).
The bound H_n <= n^s holds for any s with zeta(s) <= 2, i.e. s >= 1.7286...

    python scripts/h_sequence_bound.py --N 100000
"""
import argparse
import math

from primeprod.arith import h_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=100_000)
    args = ap.parse_args()

    H = h_sequence(args.N)
    lo = 2
    while lo <= args.N:
        hi = min(10 * lo, args.N + 1)
        n = max(range(lo, hi), key=lambda n: math.log(H[n]) / math.log(n))
        print(f"n in [{lo}, {hi}): max log H_n / log n = {math.log(H[n]) / math.log(n):.4f} at n = {n} (H_n = {H[n]})")
        lo = hi


if __name__ == "__main__":
    main()
