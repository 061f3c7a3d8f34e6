"""Root filtering after a greedy 10% prefix, one row per instance.

usage: python scripts/filter_table.py data/berlin52.tsp [more.tsp ...] [--assign-frac 0.1]
"""

import argparse

from hcprop.harness.experiment import CONFIGS, filter_experiment
from hcprop.tsplib import load_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("files", nargs="+")
    ap.add_argument("--assign-frac", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cols = [c for c in CONFIGS if c != "standard"]
    head = f"{'instance':<12}" + "".join(f"{c + '/' + k:>14}" for c in cols
                                          for k in ("dom", "min", "max"))
    print(head)
    for path in args.files:
        res = filter_experiment(load_instance(path), args.assign_frac, args.seed)
        row = f"{res.instance:<12}"
        for c in cols:
            r = res.configs[c]
            row += f"{r.dom_cell:>14}{r.min_cell:>14}{r.max_cell:>14}"
        print(row)
        base = res.configs["standard"]
        print(f"{'':<12}raw baseline: dom={base.dom} min={base.min_cost} max={base.max_cost}")
        for c in cols:
            r = res.configs[c]
            print(f"{'':<12}raw {c}: dom={r.dom} min={r.min_cost} max={r.max_cost}")


if __name__ == "__main__":
    main()
