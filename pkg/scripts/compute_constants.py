"""Evaluate the built-in constants at several target precisions and report plans and timings.

    python scripts/compute_constants.py --digits 20 50 100
"""
import argparse
import time
from fractions import Fraction

from primeprod.evaluate import evaluate_constant
from primeprod.funcs import builtin, builtin_names
from primeprod.mpreal import as_fraction

# earlier published value of c, accurate to five digits only
EARLIER_C = Fraction("0.7138067")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, nargs="+", default=[20, 50, 100])
    ap.add_argument("--m", type=int, default=None, help="override the head/tail split")
    args = ap.parse_args()

    for name in builtin_names():
        spec = builtin(name)
        print(f"{name}: {spec.description}")
        for D in args.digits:
            t0 = time.perf_counter()
            cv = evaluate_constant(spec, D, m=args.m)
            dt = time.perf_counter() - t0
            p = cv.plan
            print(f"  D={D:<4} M={p.M:<4} P={p.working_precision:<5} certified={cv.decimal_digits_certified:<4} "
                  f"{dt:6.2f}s  {cv.decimal()}")
        if name == "avg-divisor-c":
            diff = abs(as_fraction(cv.value) - EARLIER_C)
            print(f"  |c - 0.7138067| = {float(diff):.3e}")


if __name__ == "__main__":
    main()
