"""Table of the scalar Chern identities for small dimensions."""

import argparse

from quatkuga.chern import chern_profile, relative_canonical_factors, slope_forces_curve


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-m", type=int, default=8)
    args = p.parse_args()
    print(f"{'m':>3}  coefficients of c_1^r in c_r")
    for m in range(1, args.max_m + 1):
        prof = chern_profile(m)
        print(f"{m:>3}  {', '.join(str(c) for c in prof.coefficients)}")
    print("\n  n  deg E / canonical factors (m = n + 2)   slope 2/(n+1) vs 1/n")
    for n in range(1, args.max_m):
        e, k = relative_canonical_factors(n + 2, n)
        lhs, rhs, eq = slope_forces_curve(n)
        print(f"{n:>3}  {str(e):>6} / {str(k):<6}{'':>24}{lhs} vs {rhs}{' (equal)' if eq else ''}")


if __name__ == "__main__":
    main()
