"""Size of the secondary part against the shift, over seeded prime-supported instances.

Records max |S(a)| / a per instance; the secondary part vanishes unless some
prime in the support of f divides a.
"""

import argparse
from fractions import Fraction

from ramcorr.decomposition import decompose
from ramcorr.generators import InstanceConfig, random_prime_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--shifts", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = InstanceConfig(max_Q=12, max_N=60)
    print("seed,Q,N,nonzero_shifts,max_abs_S,max_abs_S_over_a,argmax_a")
    for k in range(args.instances):
        inst = random_prime_instance(args.seed + k, cfg)
        best, arg, nonzero, top = Fraction(0), 0, 0, Fraction(0)
        for a in range(1, args.shifts + 1):
            S = decompose(inst, a).secondary
            nonzero += S != 0
            top = max(top, abs(S))
            if abs(S) / a > best:
                best, arg = abs(S) / a, a
        print(f"{args.seed + k},{inst.Q},{inst.N},{nonzero},{float(top):.6g},{float(best):.6g},{arg}")


if __name__ == "__main__":
    main()
