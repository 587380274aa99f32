"""Run every verification suite at a given scale and write JSON reports."""

import argparse
import sys
from pathlib import Path

from ramcorr.suites import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", choices=("small", "full"), default="small")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name in SUITES:
        rep = run_suite(name, SuiteConfig(args.scale, args.seed))
        (out / f"{name}_{args.scale}.json").write_text(rep.to_json() + "\n")
        fails = [c.id for c in rep.checks if c.status.endswith("fail")]
        print(f"{name:14s} {rep.seconds:6.1f}s  {'ok' if rep.ok else 'FAILED'}  {' '.join(fails)}")
        ok &= rep.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
