"""Nodes to proven optimality for each portfolio layout on random instances.

usage: python scripts/portfolio_compare.py [--sizes 8 9 10] [--count 5]
"""

import argparse

from hcprop.harness.assets import SolveConfig
from hcprop.harness.cli import cmd_solve
from hcprop.reference import held_karp
from hcprop.tsplib import random_instance

LAYOUTS = [
    ("standard", [], "combined"),
    ("combined", ["wncl", "cbp", "onetree"], "combined"),
    ("multi", ["wncl", "cbp", "onetree"], "multi"),
    ("roundrobin", ["wncl", "cbp", "onetree"], "roundrobin"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 9, 10])
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'instance':<12}{'opt':>8}" + "".join(f"{name:>12}" for name, _, _ in LAYOUTS))
    for n in args.sizes:
        for k in range(args.count):
            inst = random_instance(n, 100 * n + k)
            opt = held_karp(inst.weights)[0]
            row = f"{inst.name:<12}{opt:>8}"
            for _, props, strategy in LAYOUTS:
                rep = cmd_solve(inst, SolveConfig(props=props, strategy=strategy,
                                                  seed=args.seed, time_limit=None))
                assert rep.proven_optimal and rep.cost == opt
                row += f"{rep.statistics['nodes']:>12}"
            print(row)


if __name__ == "__main__":
    main()
