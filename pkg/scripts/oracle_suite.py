"""Randomised half-checking oracle over every propagator.

usage: python scripts/oracle_suite.py [--trials 1000] [--seed 0]
"""

import argparse
import time

from hcprop.harness.cli import cmd_oracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    out = cmd_oracle(args.trials, args.seed, ("standard", "ncl", "wncl", "cbp", "onetree"))
    for name, r in out.items():
        print(f"{name:<9} trials={r['trials']} accepted={r['accepted']} "
              f"rejected_valid={r['rejected_valid']} rejected_invalid={r['rejected_invalid']} "
              f"violations={len(r['violations'])}")
        for v in r["violations"][:5]:
            print("   ", v)
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
