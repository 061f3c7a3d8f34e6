"""Assemble portfolio assets for a TSP instance."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..branching import EPSILON, WarnsdorffBrancher
from ..circuit import COST, CircuitModel, standard_propagators
from ..halfcheck import NCL_NODE_LIMIT, make_propagator
from ..kernel import Asset, Store
from .checker import check_cost_circuit


@dataclass
class SolveConfig:
    props: list[str] = field(default_factory=list)
    strategy: str = "combined"
    complete_assets: int = 1
    time_limit: float | None = 10.0
    node_limit: int | None = None
    seed: int = 0
    epsilon: float = EPSILON
    start_node: int = 0
    luby_scale: int = 32
    record_nogoods_incomplete: bool = False
    ncl_limit: int = NCL_NODE_LIMIT


def store_checker(model: CircuitModel):
    n = model.n

    def check(store: Store) -> bool:
        succ = [store.value(i) for i in range(n)]
        cost = store.lo[COST] if store.lo[COST] == store.hi[COST] else None
        return cost is not None and check_cost_circuit(model.w, succ, cost)
    return check


def complete_asset(model: CircuitModel, cfg: SolveConfig, k: int = 0) -> Asset:
    seed = cfg.seed + k
    return Asset(
        name=f"complete{k}",
        propagators=standard_propagators(model),
        brancher=WarnsdorffBrancher(model, cfg.start_node, cfg.epsilon, seed),
        objective=COST,
        restart_scale=cfg.luby_scale,
        nogood_recording=True,
        checker=store_checker(model),
        seed=seed,
    )


def incomplete_asset(model: CircuitModel, cfg: SolveConfig) -> Asset:
    seed = cfg.seed + 1000
    hc = [make_propagator(p, model, seed=seed, start=cfg.start_node,
                          ncl_limit=cfg.ncl_limit) for p in cfg.props]
    return Asset(
        name="halfcheck",
        propagators=standard_propagators(model) + hc,
        brancher=WarnsdorffBrancher(model, cfg.start_node, cfg.epsilon, seed),
        objective=COST,
        restart_scale=cfg.luby_scale,
        nogood_recording=cfg.record_nogoods_incomplete,
        checker=store_checker(model),
        seed=seed,
    )


def build_assets(model: CircuitModel, cfg: SolveConfig) -> list[Asset]:
    """Complete assets first; the half-checking propagators go in the last,
    incomplete, asset."""
    assets = [complete_asset(model, cfg, k) for k in range(cfg.complete_assets)]
    if cfg.props:
        assets.append(incomplete_asset(model, cfg))
    return assets
