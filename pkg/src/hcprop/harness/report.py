"""Machine-readable run reports.

A report is one JSON document.  Everything that depends on wall-clock time
lives under ``timing``; the ``statistics`` section is a pure function of the
configuration and seed when the run is not cut short by the time limit.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from ..circuit import CircuitModel
from ..kernel import PortfolioOutcome
from .assets import SolveConfig
from .checker import check_cost_circuit


class ReportError(AssertionError):
    pass


@dataclass
class RunReport:
    instance: str
    n: int
    config: dict
    seeds: dict[str, int | None]
    statistics: dict
    timing: dict = field(default_factory=dict)

    @property
    def cost(self) -> int | None:
        return self.statistics["cost"]

    @property
    def proven_optimal(self) -> bool:
        return self.statistics["proven_optimal"]

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def statistics_json(self) -> str:
        return json.dumps(self.statistics, sort_keys=True)


def build_report(model: CircuitModel, cfg: SolveConfig, outcome: PortfolioOutcome,
                 seeds: dict[str, int | None]) -> RunReport:
    """Assemble a report, re-verifying the incumbent with the checker."""
    tour = None
    cost = None
    if outcome.incumbent is not None:
        values, cost = outcome.incumbent
        succ = list(values[:model.n])
        if not check_cost_circuit(model.w, succ, cost):
            raise ReportError(f"incumbent fails the checker: succ={succ} cost={cost}")
        tour = model.tour_of(succ)
    costs = [c for _, c, _ in outcome.history]
    if any(b >= a for a, b in zip(costs, costs[1:])):
        raise ReportError(f"incumbent trajectory not decreasing: {costs}")
    stats = {
        "cost": cost,
        "tour": tour,
        "proven_optimal": outcome.proven_optimal,
        "infeasible": outcome.infeasible,
        "timed_out": outcome.timed_out,
        "strategy": outcome.strategy.value,
        "assets": outcome.assets,
        "trajectory": [{"cost": c, "asset": a} for _, c, a in outcome.history],
        "nodes": sum(s.nodes for s in outcome.stats.values()),
        "failures": sum(s.failures for s in outcome.stats.values()),
        "restarts": sum(s.restarts for s in outcome.stats.values()),
        "per_asset": {
            name: {"nodes": s.nodes, "failures": s.failures, "restarts": s.restarts,
                   "solutions": s.solutions, "nogoods": s.nogoods}
            for name, s in outcome.stats.items()},
    }
    timing = {
        "wall_time": outcome.wall_time,
        "trajectory": [{"time": t, "cost": c, "asset": a} for t, c, a in outcome.history],
    }
    return RunReport(model.inst.name, model.n, dataclasses.asdict(cfg), seeds, stats, timing)
