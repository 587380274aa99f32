"""Partial sums of the twin-prime singular series against the Euler product."""

import argparse

from ramcorr.decomposition import singular_series_demo, singular_series_euler


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shifts", type=int, nargs="+", default=[2, 4, 6, 30])
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[10, 100, 1000, 10000, 100000])
    args = ap.parse_args()
    print("a,X,partial_sum,euler_product,delta")
    for a in args.shifts:
        euler = singular_series_euler(a)
        for X in args.cutoffs:
            s = singular_series_demo(a, X)
            print(f"{a},{X},{s:.10f},{euler:.10f},{s - euler:+.3e}")


if __name__ == "__main__":
    main()
