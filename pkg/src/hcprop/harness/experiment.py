"""Root filtering experiment: how much do the half-checking propagators prune
after a short Warnsdorff prefix has been assigned?

Every configuration starts from the root store, applies the same prefix of
successor assignments (computed once on the standard model with a greedy,
epsilon-free brancher) with a fixpoint after each one, and reports the
remaining domain sizes and cost bounds.

Cells are remaining fractions against the standard baseline: ``dom`` and
``max`` are config/baseline, ``min`` is baseline/config (a raised lower bound
shows up as a value below 1).  ``=`` marks no change and ``⊥`` a failed store.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from ..branching import WarnsdorffBrancher
from ..circuit import COST, CircuitModel, standard_propagators
from ..halfcheck import make_propagator
from ..kernel import Decision, Propagator, Store, propagate_fixpoint
from ..tsplib import TspInstance

CONFIGS: dict[str, tuple[str, ...]] = {
    "standard": (),
    "wncl": ("wncl",),
    "cbp": ("cbp",),
    "onetree": ("onetree",),
    "all": ("wncl", "cbp", "onetree"),
}
FAILED = "⊥"
SAME = "="


class BaselineFailure(RuntimeError):
    pass


@dataclass
class ConfigResult:
    name: str
    failed: bool
    dom: int | None
    min_cost: int | None
    max_cost: int | None
    dom_cell: str = ""
    min_cell: str = ""
    max_cell: str = ""
    dom_ratio: float | None = None
    min_ratio: float | None = None
    max_ratio: float | None = None


@dataclass
class FilterExperimentResult:
    instance: str
    n: int
    assigned: int
    prefix: list[tuple[int, int]]
    configs: dict[str, ConfigResult] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def warnsdorff_prefix(model: CircuitModel, k: int) -> list[Decision]:
    """First ``k`` greedy branching decisions on the standard model."""
    props = standard_propagators(model)
    brancher = WarnsdorffBrancher(model, epsilon=0.0, seed=0)
    store = model.root_store()
    out: list[Decision] = []
    while len(out) < k:
        if not propagate_fixpoint(store, props):
            raise BaselineFailure(f"standard model failed after {len(out)} assignments")
        choice = brancher.select(store)
        if choice is None:
            break
        d = Decision(*choice)
        d.apply(store)
        out.append(d)
    return out


def run_config(model: CircuitModel, props: list[Propagator],
               prefix: list[Decision]) -> Store:
    store = model.root_store()
    if not propagate_fixpoint(store, props):
        return store
    for d in prefix:
        d.apply(store)
        if not propagate_fixpoint(store, props):
            break
    return store


def _cell(value: float | None, same: bool, failed: bool) -> str:
    if failed:
        return FAILED
    if same:
        return SAME
    return f"{100 * value:.2f}%"


def _ratio(num: int, den: int) -> float:
    if den == 0:
        return 1.0 if num == 0 else float("inf")
    return num / den


def filter_experiment(inst: TspInstance, assign_frac: float = 0.1,
                      seed: int = 0) -> FilterExperimentResult:
    if not 0 <= assign_frac <= 1:
        raise ValueError(f"assign fraction must lie in [0, 1], got {assign_frac}")
    model = CircuitModel(inst)
    k = round(assign_frac * model.n)
    prefix = warnsdorff_prefix(model, k)
    result = FilterExperimentResult(inst.name, model.n, len(prefix),
                                    [(d.var, d.value) for d in prefix])
    base = None
    for name, extra in CONFIGS.items():
        props = standard_propagators(model) + [
            make_propagator(p, model, seed=seed) for p in extra]
        store = run_config(model, props, prefix)
        if store.failed:
            if base is None:
                raise BaselineFailure(f"baseline store failed on {inst.name}")
            result.configs[name] = ConfigResult(name, True, None, None, None,
                                                FAILED, FAILED, FAILED)
            continue
        dom = sum(store.size(i) for i in range(model.n))
        lo, hi = store.lo[COST], store.hi[COST]
        if base is None:
            base = (dom, lo, hi)
        bdom, blo, bhi = base
        r = ConfigResult(name, False, dom, lo, hi)
        r.dom_ratio = _ratio(dom, bdom)
        r.min_ratio = _ratio(blo, lo)
        r.max_ratio = _ratio(hi, bhi)
        r.dom_cell = _cell(r.dom_ratio, dom == bdom, False)
        r.min_cell = _cell(r.min_ratio, lo == blo, False)
        r.max_cell = _cell(r.max_ratio, hi == bhi, False)
        result.configs[name] = r
    return result
