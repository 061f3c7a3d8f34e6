"""Portfolio of complete and incomplete assets.

Assets are interleaved deterministically in slices of nodes on one thread.
They share the incumbent (and so the objective bound, which is sound since
every incumbent is a real solution).  No-goods from complete assets are
shared everywhere; no-goods from incomplete assets stay in the asset that
produced them.  Optimality is only ever claimed when a complete asset
exhausts its search.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace
from typing import Sequence

from .search import (EXHAUSTED, Asset, Incumbent, Restart, Search, SearchStats,
                     Solution)
from .store import Store


class Strategy(enum.Enum):
    COMBINED = "combined"
    MULTIPLE = "multi"
    ROUND_ROBIN = "roundrobin"

    @classmethod
    def parse(cls, text: str) -> Strategy:
        aliases = {"multiple": "multi", "multiple_assets": "multi",
                   "round_robin": "roundrobin", "round-robin": "roundrobin"}
        return cls(aliases.get(text, text))


@dataclass
class PortfolioOutcome:
    incumbent: tuple[tuple[int, ...], int] | None
    proven_optimal: bool
    infeasible: bool
    stats: dict[str, SearchStats]
    history: list[tuple[float, int, str]]
    timed_out: bool = False
    strategy: Strategy = Strategy.COMBINED
    wall_time: float = 0.0
    assets: list[str] = field(default_factory=list)


def _fork_brancher(brancher, seed):
    fork = getattr(brancher, "fork", None)
    return fork(seed) if fork is not None else brancher


def arrange(assets: Sequence[Asset], strategy: Strategy) -> list[Asset]:
    """Lay out incomplete assets according to ``strategy``.

    combined: unchanged, each incomplete asset runs all its half-checking
    propagators together.  multi: one asset per half-checking propagator.
    roundrobin: one asset that switches half-checking propagator on restart.
    """
    if strategy is Strategy.COMBINED:
        return list(assets)
    out: list[Asset] = []
    for a in assets:
        hc = [p for p in a.propagators if p.half_checking]
        if not hc or a.rotation:
            out.append(a)
            continue
        base = [p for p in a.propagators if not p.half_checking]
        if strategy is Strategy.MULTIPLE:
            for k, p in enumerate(hc):
                seed = None if a.seed is None else a.seed + k
                out.append(replace(
                    a, name=f"{a.name}/{p.name}", seed=seed,
                    propagators=[q.fork(seed) for q in base] + [p.fork(seed)],
                    brancher=_fork_brancher(a.brancher, seed), nogoods=[]))
        else:
            out.append(replace(a, name=f"{a.name}/rr", propagators=base,
                               rotation=[[p] for p in hc], nogoods=[]))
    return out


def portfolio_run(assets: Sequence[Asset], store: Store,
                  strategy: Strategy = Strategy.COMBINED,
                  time_limit: float | None = None, *, node_limit: int | None = None,
                  slice_nodes: int = 64, share_nogoods: bool = True,
                  check: bool = False) -> PortfolioOutcome:
    if not assets:
        raise ValueError("a portfolio needs at least one asset")
    assets = arrange(assets, strategy)
    names = [a.name for a in assets]
    if len(set(names)) != len(names):
        raise ValueError(f"asset names must be unique: {names}")
    incumbent = Incumbent()
    searches = {a.name: Search(a, store, incumbent, check=check) for a in assets}
    streams = {name: s.events() for name, s in searches.items()}
    active = list(names)
    by_name = {a.name: a for a in assets}
    proven = False
    timed_out = False
    t0 = time.perf_counter()
    total_nodes = 0

    while active and not proven:
        for name in list(active):
            budget = slice_nodes
            for ev in streams[name]:
                if ev is None:
                    total_nodes += 1
                    budget -= 1
                    if budget <= 0 or total_nodes == node_limit:
                        break
                elif isinstance(ev, Restart):
                    if share_nogoods:
                        for ng in ev.nogoods:
                            if ng.origin_incomplete:
                                continue
                            for other in assets:
                                if other.name != name:
                                    other.install_nogood(ng)
                elif ev is EXHAUSTED:
                    active.remove(name)
                    if by_name[name].complete:
                        proven = True
                    break
                elif isinstance(ev, Solution):
                    pass
            else:
                if name in active:
                    active.remove(name)
            if proven:
                break
            if time_limit is not None and time.perf_counter() - t0 > time_limit:
                timed_out = True
                break
            if node_limit is not None and total_nodes >= node_limit:
                timed_out = True
                break
        if timed_out:
            break

    inc = None
    if incumbent.cost is not None:
        inc = (incumbent.solution, incumbent.cost)
    return PortfolioOutcome(
        incumbent=inc,
        proven_optimal=proven and inc is not None,
        infeasible=proven and inc is None,
        stats={n: s.stats for n, s in searches.items()},
        history=list(incumbent.history),
        timed_out=timed_out,
        strategy=strategy,
        wall_time=time.perf_counter() - t0,
        assets=names,
    )
