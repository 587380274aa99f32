"""Which random fair correlations are reproduced by their finite Ramanujan expansion.

For each seeded instance, print whether C(a) depends only on gcd(a, L) and
whether the closed-form coefficients reproduce C on one full period.
"""

import argparse
from fractions import Fraction

from ramcorr.correlations import correlation_table, is_even_periodic, period_bound, correlation_coefficients
from ramcorr.generators import random_bh_instance, random_prime_instance
from ramcorr.ramanujan import c_kluyver


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--prime-supported", action="store_true")
    args = ap.parse_args()
    gen = random_prime_instance if args.prime_supported else random_bh_instance
    print("seed,Q,N,period_bound,even,reproduced,worst_shift")
    for k in range(args.instances):
        inst = gen(args.seed + k)
        L = period_bound(inst)
        coeffs = correlation_coefficients(inst)
        C = correlation_table(inst, range(1, L + 1))
        R = [sum((w * c_kluyver(l, a) for l, w in coeffs.items()), Fraction(0)) for a in range(1, L + 1)]
        diffs = [abs(c - r) for c, r in zip(C, R)]
        worst = max(range(L), key=lambda i: diffs[i]) + 1
        print(f"{args.seed + k},{inst.Q},{inst.N},{L},{int(is_even_periodic(inst))},{int(C == R)},{worst}")


if __name__ == "__main__":
    main()
