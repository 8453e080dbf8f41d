"""Sample |f'/f| on |z| = R for the built-in integrands (a sanity check of B, not a proof).

    python scripts/bound_check.py --R 0.9 --points 20000
"""
import argparse

import mpmath

# f'/f in closed form, from the logarithmic derivative of each factor
LOG_DERIVATIVES = {
    # f = (-ln(1-z)/z) sqrt(1-z)
    "ramanujan-a1": lambda z, mp: 1 / ((1 - z) * -mp.log(1 - z)) - 1 / z - 1 / (2 * (1 - z)),
    # f = ln(1+z) / (z sqrt(1-z))
    "avg-divisor-c": lambda z, mp: 1 / ((1 + z) * mp.log(1 + z)) - 1 / z + 1 / (2 * (1 - z)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--R", type=float, default=0.9)
    ap.add_argument("--points", type=int, default=20000)
    args = ap.parse_args()

    mp = mpmath.MPContext()
    mp.prec = 64
    R = mp.mpf(args.R)
    for name, dlog in LOG_DERIVATIVES.items():
        best, where = 0, None
        for j in range(args.points):
            z = R * mp.expjpi(mp.mpf(2 * j) / args.points)
            v = abs(dlog(z, mp))
            if v > best:
                best, where = v, z
        print(f"{name}: max |f'/f| on |z| = {args.R} ~ {mp.nstr(best, 6)} at z = {mp.nstr(where, 4)}")
    # the hand bound used by both built-ins
    print(f"hand bound 2/R + 3/(2(1-R)) = {2 / args.R + 1.5 / (1 - args.R):.4f}")


if __name__ == "__main__":
    main()
