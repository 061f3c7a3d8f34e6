"""Randomised half-checking oracle for propagators.

Each trial draws an instance and a target full assignment, then shrinks the
root store towards the target while running the propagators under test now
and then.  If the propagators leave the target assignment standing (the store
ends up equal to it, not failed), the independent checker must accept it.
Valid targets may be rejected: that is allowed for half-checking propagators.
Every step is also checked for contraction and locality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from ..circuit import COST, CircuitModel
from ..kernel import ContractViolation, Propagator, propagate_fixpoint
from ..reference import held_karp
from ..tsplib import random_instance
from .checker import check_cost_circuit

PropFactory = Callable[[CircuitModel, random.Random], list[Propagator]]


@dataclass
class OracleReport:
    name: str
    trials: int = 0
    accepted: int = 0
    accepted_valid_targets: int = 0
    rejected_valid_targets: int = 0
    rejected_invalid_targets: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _random_target(model: CircuitModel, rng: random.Random, optimal: bool):
    n = model.n
    w = model.w
    if optimal:
        _, tour = held_karp(w)
        if rng.random() < 0.5:
            tour = tour[::-1]
        succ = [0] * n
        for k in range(n):
            succ[tour[k]] = tour[(k + 1) % n]
        return succ, model.succ_cost(succ)
    kind = rng.random()
    if kind < 0.5:
        order = list(range(n))
        rng.shuffle(order)
        succ = [0] * n
        for k in range(n):
            succ[order[k]] = order[(k + 1) % n]
    elif kind < 0.75:
        while True:
            succ = list(range(n))
            rng.shuffle(succ)
            if all(succ[i] != i for i in range(n)):
                break
    else:
        succ = [rng.choice([j for j in range(n) if j != i]) for i in range(n)]
    cost = model.succ_cost(succ)
    if rng.random() < 0.25:
        cost = max(0, cost + rng.choice([-1, 1]) * rng.randint(1, 40))
    return succ, cost


def run_trial(model: CircuitModel, props: list[Propagator], succ: list[int], cost: int,
              rng: random.Random) -> bool | None:
    """Shrink towards (succ, cost). Returns True if accepted, False if
    rejected; raises ContractViolation on a broken step."""
    n = model.n
    pred = [-1] * n
    for i, j in enumerate(succ):
        pred[j] = i
    if -1 in pred:
        pred = [rng.choice([i for i in range(n) if i != j]) for j in range(n)]
    target = succ + pred
    store = model.root_store()
    if not (store.lo[COST] <= cost <= store.hi[COST]):
        return False
    if not propagate_fixpoint(store, props, check=True):
        return False
    pending = list(range(2 * n)) + [-1]
    while pending:
        k = rng.randrange(len(pending))
        var = pending[k]
        if var == -1:
            lo, hi = store.lo[COST], store.hi[COST]
            if not lo <= cost <= hi:
                return False
            if rng.random() < 0.5:
                store.set_min(COST, cost)
                store.set_max(COST, cost)
            else:
                store.set_min(COST, (lo + cost + 1) // 2)
                store.set_max(COST, (hi + cost) // 2)
            if store.lo[COST] == store.hi[COST]:
                pending.pop(k)
        else:
            v = target[var]
            if not store.contains(var, v):
                return False
            others = [u for u in store.values(var) if u != v]
            if not others or rng.random() < 0.5:
                store.assign(var, v)
                pending.pop(k)
            else:
                store.remove_value(var, rng.choice(others))
                if store.is_assigned(var):
                    pending.pop(k)
        if rng.random() < 0.5 and not propagate_fixpoint(store, props, check=True):
            return False
    if not propagate_fixpoint(store, props, check=True):
        return False
    if [m.bit_length() - 1 for m in store.masks] != target or \
            store.lo[COST] != cost or store.hi[COST] != cost:
        return False
    return True


def hc_oracle_suite(factory: PropFactory, trials: int = 1000, *, name: str = "props",
                    n_range: tuple[int, int] = (5, 10), seed: int = 0,
                    optimal_only: bool = False) -> OracleReport:
    report = OracleReport(name)
    for t in range(trials):
        trial_seed = seed * 1_000_003 + t
        rng = random.Random(trial_seed)
        n = rng.randint(*n_range)
        model = CircuitModel(random_instance(n, rng.randrange(1 << 30)))
        succ, cost = _random_target(model, rng, optimal_only)
        valid = check_cost_circuit(model.w, succ, cost)
        props = factory(model, rng)
        report.trials += 1
        try:
            accepted = run_trial(model, props, succ, cost, rng)
        except ContractViolation as exc:
            report.violations.append(f"trial seed {trial_seed}: {exc}")
            continue
        if accepted:
            report.accepted += 1
            if valid:
                report.accepted_valid_targets += 1
            else:
                report.violations.append(
                    f"trial seed {trial_seed}: accepted invalid assignment succ={succ} cost={cost}")
        elif valid:
            report.rejected_valid_targets += 1
        else:
            report.rejected_invalid_targets += 1
    return report
