"""Restarting depth-first branch-and-bound with no-good recording.

State restoration is by copying: every branch point keeps a full copy of the
store for the right alternative.  Propagators that are not weakly monotonic
(every half-checking one) may give different results when re-run, so nothing
is ever recomputed.
"""

from __future__ import annotations

import dataclasses
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Protocol, Sequence

from .propagation import PropStatus, Propagator, propagate_fixpoint
from .store import Store


def luby(i: int) -> int:
    """The ``i``-th element (1-based) of the Luby sequence 1,1,2,1,1,2,4,..."""
    if i < 1:
        raise ValueError("luby index starts at 1")
    while True:
        k = i.bit_length()
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


@dataclass(frozen=True)
class Decision:
    var: int
    value: int
    assign: bool = True   # False: the exclusion var != value

    def negate(self) -> Decision:
        return dataclasses.replace(self, assign=not self.assign)

    def apply(self, store: Store) -> None:
        if self.assign:
            store.assign(self.var, self.value)
        else:
            store.remove_value(self.var, self.value)

    def __str__(self) -> str:
        return f"x{self.var}{'=' if self.assign else '!='}{self.value}"


@dataclass(frozen=True)
class NoGood:
    """Forbids the conjunction of ``decisions`` (all positive assignments)."""

    decisions: tuple[Decision, ...]
    origin_incomplete: bool = False
    origin: str = ""


class UnsoundNoGood(ValueError):
    """A no-good from an incomplete asset was offered to a complete one."""


def extract_nogood(path: Sequence[Decision], origin: Asset,
                   last_explored: bool = False) -> list[NoGood]:
    """Standard prefix no-goods of a restart path.

    Every exclusion ``x != v`` on the path means the sibling ``x = v`` was
    explored completely, so the positive decisions above it together with
    ``x = v`` form a no-good.  With ``last_explored`` the final decision of the
    path is itself treated as fully explored.
    """
    tagged = not origin.complete
    out: list[NoGood] = []
    positives: list[Decision] = []
    last = len(path) - 1
    for k, d in enumerate(path):
        if not d.assign or (last_explored and k == last):
            lit = d if d.assign else d.negate()
            out.append(NoGood(tuple(positives) + (lit,), tagged, origin.name))
        if d.assign:
            positives.append(d)
    return out


class NoGoodPropagator(Propagator):
    """Unit propagation over a growing list of no-goods."""

    name = "nogoods"

    def __init__(self, nogoods: list[NoGood], num_vars: int) -> None:
        super().__init__(scope=(1 << num_vars) - 1)
        self.nogoods = nogoods

    def propagate(self, store: Store) -> PropStatus:
        changed = False
        masks = store.masks
        for ng in self.nogoods:
            open_lit = None
            for d in ng.decisions:
                m = masks[d.var]
                if not (m >> d.value) & 1:
                    break
                if m != 1 << d.value:
                    if open_lit is not None:
                        break
                    open_lit = d
            else:
                if open_lit is None:
                    return PropStatus.FAILED
                store.remove_value(open_lit.var, open_lit.value)
                if store.failed:
                    return PropStatus.FAILED
                changed = True
        return PropStatus.NOFIX if changed else PropStatus.FIX


class Brancher(Protocol):
    def select(self, store: Store) -> tuple[int, int] | None: ...


@dataclass
class Asset:
    """One configured solver: propagators, brancher and restart policy.

    ``complete`` is derived: an asset holding any half-checking propagator, or
    declaring ``incomplete_search``, is incomplete.  ``rotation`` holds extra
    propagator groups cycled through on each restart (round-robin portfolios).
    """

    name: str
    propagators: list[Propagator]
    brancher: Brancher
    objective: int | None = 0
    restart_scale: int | None = 32
    nogood_recording: bool = True
    rotation: list[list[Propagator]] = field(default_factory=list)
    checker: Callable[[Store], bool] | None = None
    incomplete_search: bool = False
    seed: int | None = None
    nogoods: list[NoGood] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        if self.incomplete_search:
            return False
        groups = [self.propagators, *self.rotation]
        return not any(p.half_checking for g in groups for p in g)

    def install_nogood(self, ng: NoGood) -> None:
        if ng.origin_incomplete and self.complete:
            raise UnsoundNoGood(
                f"no-good from incomplete asset {ng.origin!r} rejected by complete asset {self.name!r}")
        self.nogoods.append(ng)


class Incumbent:
    """Best solution so far, shared between assets; cost only ever decreases."""

    def __init__(self) -> None:
        self.cost: int | None = None
        self.solution: tuple[int, ...] | None = None
        self.source: str | None = None
        self.history: list[tuple[float, int, str]] = []
        self._lock = threading.Lock()
        self._t0 = time.perf_counter()

    def offer(self, cost: int, solution: tuple[int, ...], source: str) -> bool:
        with self._lock:
            if self.cost is not None and cost >= self.cost:
                return False
            self.cost, self.solution, self.source = cost, solution, source
            self.history.append((time.perf_counter() - self._t0, cost, source))
            return True


@dataclass
class SearchStats:
    nodes: int = 0
    failures: int = 0
    restarts: int = 0
    solutions: int = 0
    nogoods: int = 0
    time: float = 0.0


@dataclass(frozen=True)
class Solution:
    values: tuple[int, ...]
    cost: int | None


@dataclass(frozen=True)
class Restart:
    nogoods: tuple[NoGood, ...]


class Exhausted:
    pass


EXHAUSTED = Exhausted()
TICK = None


class Search:
    """Restarting DFS for one asset, driven as a generator.

    :meth:`events` yields ``None`` once per node (so a portfolio can
    interleave assets), a :class:`Solution` for each solution, a
    :class:`Restart` with the extracted no-goods, and finally ``EXHAUSTED``
    when a restart round explored its whole tree.
    """

    def __init__(self, asset: Asset, root: Store, incumbent: Incumbent | None = None,
                 *, all_solutions: bool = False, check: bool = False) -> None:
        self.asset = asset
        self.root = root
        self.incumbent = incumbent if incumbent is not None else Incumbent()
        self.all_solutions = all_solutions
        self.check = check
        self.stats = SearchStats()
        self.exhausted = False
        self._nogood_prop = NoGoodPropagator(asset.nogoods, root.num_sets)

    def _props(self, round_no: int) -> list[Propagator]:
        props = list(self.asset.propagators)
        if self.asset.rotation:
            props += self.asset.rotation[(round_no - 1) % len(self.asset.rotation)]
        props.append(self._nogood_prop)
        return props

    def _bound(self, store: Store) -> None:
        obj = self.asset.objective
        if obj is not None and not self.all_solutions and self.incumbent.cost is not None:
            store.set_max(obj, self.incumbent.cost - 1)

    def events(self) -> Iterator[Solution | Restart | Exhausted | None]:
        asset = self.asset
        obj = asset.objective
        scale = None if self.all_solutions else asset.restart_scale
        round_no = 0
        t0 = time.perf_counter()
        while True:
            round_no += 1
            budget = scale * luby(round_no) if scale else None
            props = self._props(round_no)
            stack: list[tuple[Store, tuple[Decision, ...]]] = [(self.root.copy(), ())]
            round_failures = 0
            restart_path: tuple[Decision, ...] | None = None
            while stack:
                store, path = stack.pop()
                self.stats.nodes += 1
                yield TICK
                self._bound(store)
                ok = propagate_fixpoint(store, props, check=self.check)
                if ok:
                    choice = asset.brancher.select(store)
                    if choice is None:
                        if obj is not None and store.lo[obj] != store.hi[obj]:
                            store.set_max(obj, store.lo[obj])
                            ok = propagate_fixpoint(store, props, check=self.check)
                        if ok:
                            ok = self._emit_ok(store)
                        if ok:
                            self.stats.solutions += 1
                            sol = Solution(tuple(m.bit_length() - 1 for m in store.masks),
                                           store.lo[obj] if obj is not None else None)
                            if not self.all_solutions and obj is not None:
                                self.incumbent.offer(sol.cost, sol.values, asset.name)
                            yield sol
                            continue
                    else:
                        var, val = choice
                        right = store.copy()
                        right.remove_value(var, val)
                        store.assign(var, val)
                        stack.append((right, path + (Decision(var, val, False),)))
                        stack.append((store, path + (Decision(var, val, True),)))
                        continue
                self.stats.failures += 1
                round_failures += 1
                if budget is not None and round_failures >= budget and stack:
                    restart_path = path
                    break
            self.stats.time = time.perf_counter() - t0
            if restart_path is None:
                self.exhausted = True
                yield EXHAUSTED
                return
            self.stats.restarts += 1
            ngs: list[NoGood] = []
            if asset.nogood_recording:
                ngs = extract_nogood(restart_path, asset, last_explored=True)
                for ng in ngs:
                    asset.install_nogood(ng)
                self.stats.nogoods += len(ngs)
            yield Restart(tuple(ngs))

    def _emit_ok(self, store: Store) -> bool:
        if self.asset.checker is not None and not self.asset.checker(store):
            raise AssertionError(f"asset {self.asset.name!r} produced a non-solution: {store!r}")
        obj = self.asset.objective
        if obj is None or self.all_solutions:
            return True
        cost = self.incumbent.cost
        return cost is None or store.lo[obj] < cost


@dataclass
class SearchResult:
    solutions: list[Solution]
    exhausted: bool
    stats: SearchStats


def search_restarting(asset: Asset, store: Store, incumbent: Incumbent | None = None,
                      *, node_limit: int | None = None, check: bool = False) -> SearchResult:
    """Run one asset's branch-and-bound to exhaustion (or ``node_limit``)."""
    search = Search(asset, store, incumbent, check=check)
    sols: list[Solution] = []
    for ev in search.events():
        if isinstance(ev, Solution):
            sols.append(ev)
        elif ev is TICK and node_limit is not None and search.stats.nodes > node_limit:
            break
    return SearchResult(sols, search.exhausted, search.stats)


def search_all(asset: Asset, store: Store, *, check: bool = False) -> list[Solution]:
    """Enumerate every solution (no restarts, no bounding)."""
    search = Search(asset, store, all_solutions=True, check=check)
    return [ev for ev in search.events() if isinstance(ev, Solution)]
