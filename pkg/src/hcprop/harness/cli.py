"""Command line entry point: ``hcprop solve | filter-exp | oracle``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..circuit import CircuitModel, standard_propagators
from ..halfcheck import NCL_NODE_LIMIT, make_propagator, parse_props
from ..kernel import Strategy, portfolio_run
from ..tsplib import TspInstance, TsplibError, load_instance
from .assets import SolveConfig, build_assets
from .experiment import BaselineFailure, filter_experiment
from .oracle import hc_oracle_suite
from .report import RunReport, build_report

log = logging.getLogger("hcprop")

ORACLE_PROPS = ("ncl", "wncl", "cbp", "onetree")


def cmd_solve(inst: TspInstance | str | Path, cfg: SolveConfig) -> RunReport:
    if not isinstance(inst, TspInstance):
        inst = load_instance(inst)
    model = CircuitModel(inst)
    assets = build_assets(model, cfg)
    log.info("solving %s (n=%d) with assets %s", inst.name, model.n,
             [a.name for a in assets])
    outcome = portfolio_run(assets, model.root_store(), Strategy.parse(cfg.strategy),
                            cfg.time_limit, node_limit=cfg.node_limit)
    return build_report(model, cfg, outcome, {a.name: a.seed for a in assets})


def oracle_factory(name: str):
    def factory(model, rng):
        return [make_propagator(name, model, seed=rng.randrange(1 << 30))]
    return factory


def standard_factory(model, rng):
    return standard_propagators(model)


def cmd_oracle(trials: int, seed: int = 0, props=ORACLE_PROPS) -> dict:
    out = {}
    for name in props:
        factory = standard_factory if name == "standard" else oracle_factory(name)
        r = hc_oracle_suite(factory, trials, name=name, seed=seed)
        out[name] = {"trials": r.trials, "accepted": r.accepted,
                     "rejected_valid": r.rejected_valid_targets,
                     "rejected_invalid": r.rejected_invalid_targets,
                     "violations": r.violations, "ok": r.ok}
    return out


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hcprop")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a TSPLIB instance with a portfolio")
    s.add_argument("file")
    s.add_argument("--props", default="", help="comma separated: ncl,wncl,cbp,onetree,fail or all")
    s.add_argument("--assets", type=int, default=1, help="number of complete assets")
    s.add_argument("--strategy", default="combined",
                   choices=[st.value for st in Strategy])
    s.add_argument("--time-limit", type=float, default=10.0)
    s.add_argument("--node-limit", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--start-node", type=int, default=0)
    s.add_argument("--luby-scale", type=int, default=32)
    s.add_argument("--ncl-limit", type=int, default=NCL_NODE_LIMIT)
    s.add_argument("--record-nogoods-incomplete", action="store_true")

    f = sub.add_parser("filter-exp", help="root filtering after a short greedy prefix")
    f.add_argument("file")
    f.add_argument("--assign-frac", type=float, default=0.1)
    f.add_argument("--seed", type=int, default=0)

    o = sub.add_parser("oracle", help="randomised half-checking oracle")
    o.add_argument("--trials", type=int, default=1000)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--props", default=",".join(ORACLE_PROPS))
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        if args.command == "solve":
            cfg = SolveConfig(props=parse_props(args.props), strategy=args.strategy,
                              complete_assets=args.assets, time_limit=args.time_limit,
                              node_limit=args.node_limit, seed=args.seed,
                              start_node=args.start_node, luby_scale=args.luby_scale,
                              record_nogoods_incomplete=args.record_nogoods_incomplete,
                              ncl_limit=args.ncl_limit)
            if args.epsilon is not None:
                cfg.epsilon = args.epsilon
            if args.assets < 1:
                raise ValueError("--assets must be at least 1")
            report = cmd_solve(args.file, cfg)
            print(report.to_json())
            return 0 if report.cost is not None else 1
        if args.command == "filter-exp":
            res = filter_experiment(load_instance(args.file), args.assign_frac, args.seed)
            print(json.dumps(res.to_dict(), indent=2, ensure_ascii=False))
            return 0
        props = [p.strip() for p in args.props.split(",") if p.strip()]
        for p in props:
            if p not in ORACLE_PROPS + ("standard",):
                raise ValueError(f"unknown propagator {p!r}")
        out = cmd_oracle(args.trials, args.seed, props)
        print(json.dumps(out, indent=2))
        return 0 if all(r["ok"] for r in out.values()) else 1
    except (TsplibError, ValueError, OSError) as exc:
        print(f"hcprop: error: {exc}", file=sys.stderr)
        return 2
    except BaselineFailure as exc:
        print(f"hcprop: experiment aborted: {exc}", file=sys.stderr)
        return 1
