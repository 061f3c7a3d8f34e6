"""Successor model of cost-circuit and its standard (correct) propagators.

Variable layout for ``n`` cities: set variables ``0..n-1`` are the successors
``S_i``, ``n..2n-1`` the predecessors ``P_i``; interval variable 0 is the cost.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import Propagator, PropStatus, Store, bits
from .tsplib import TspInstance

COST = 0


class CircuitModel:
    def __init__(self, inst: TspInstance) -> None:
        if inst.n <= 2:
            raise ValueError(f"a circuit needs at least 3 cities, got {inst.n}")
        self.inst = inst
        self.n = n = inst.n
        self.w = inst.weights
        self.S = list(range(n))
        self.P = list(range(n, 2 * n))
        self.cost = COST
        self.s_mask = (1 << n) - 1
        self.p_mask = self.s_mask << n
        self.all_mask = (1 << 2 * n) - 1
        self.upper = sum(max(row) for row in self.w)

    def root_store(self) -> Store:
        full = self.s_mask
        masks = [full & ~(1 << i) for i in range(self.n)] * 2
        return Store(masks, [0], [self.upper])

    def successors(self, store: Store) -> list[int]:
        """Assigned successor of each city, -1 where unassigned."""
        out = []
        for m in store.masks[:self.n]:
            out.append(m.bit_length() - 1 if m and not m & (m - 1) else -1)
        return out

    def tour_of(self, succ, start: int = 0) -> list[int]:
        tour = [start]
        v = succ[start]
        while v != start and len(tour) <= self.n:
            tour.append(v)
            v = succ[v]
        return tour

    def is_circuit(self, succ) -> bool:
        n = self.n
        if len(succ) != n or sorted(succ) != list(range(n)):
            return False
        seen, v = 0, 0
        for _ in range(n):
            seen += 1
            v = succ[v]
            if v == 0:
                break
        return seen == n and v == 0

    def succ_cost(self, succ) -> int:
        w = self.w
        return sum(w[i][j] for i, j in enumerate(succ))

    def full_check(self, store: Store) -> PropStatus | None:
        """If every successor is assigned, decide cost-circuit outright.

        Fixes the cost to the tour weight and reports SUBSUMED, or FAILED when
        the successors do not form a Hamiltonian circuit.  Returns None while
        some successor is still open.
        """
        succ = self.successors(store)
        if -1 in succ:
            return None
        if not self.is_circuit(succ):
            store.fail()
            return PropStatus.FAILED
        c = self.succ_cost(succ)
        store.set_min(COST, c)
        store.set_max(COST, c)
        return PropStatus.FAILED if store.failed else PropStatus.SUBSUMED

    def undirected_adjacency(self, store: Store) -> list[int]:
        """Bitmask adjacency of G_S: {i, j} present when j in S_i or i in S_j."""
        n = self.n
        adj = list(store.masks[:n])
        for i in range(n):
            bit = 1 << i
            for j in bits(store.masks[i]):
                adj[j] |= bit
        return adj

    def fixed_edges(self, store: Store) -> list[tuple[int, int, int]]:
        w = self.w
        out = []
        for i, j in enumerate(self.successors(store)):
            if j >= 0:
                a, b = (i, j) if i < j else (j, i)
                out.append((a, b, w[a][b]))
        return out


class AllDifferentValue(Propagator):
    """Value-consistent alldifferent: assigned values leave every other domain."""

    name = "alldiff"

    def __init__(self, variables: list[int]) -> None:
        mask = 0
        for v in variables:
            mask |= 1 << v
        super().__init__(scope=mask)
        self.vars = list(variables)

    def propagate(self, store: Store) -> PropStatus:
        masks = store.masks
        while True:
            seen = 0
            for v in self.vars:
                m = masks[v]
                if not m & (m - 1):
                    if m & seen:
                        return PropStatus.FAILED
                    seen |= m
            if not seen:
                return PropStatus.FIX
            again = False
            open_vars = 0
            for v in self.vars:
                m = masks[v]
                if m & (m - 1):
                    nm = m & ~seen
                    if nm != m:
                        store.restrict(v, ~seen)
                        if not nm:
                            return PropStatus.FAILED
                        if not nm & (nm - 1):
                            again = True
                            continue
                    open_vars += 1
            if not again:
                return PropStatus.FIX if open_vars else PropStatus.SUBSUMED


@dataclass(frozen=True)
class Chain:
    start: int
    end: int
    length: int   # number of nodes


def chains(model: CircuitModel, store: Store) -> tuple[list[Chain], bool]:
    """Maximal paths of assigned successors, plus whether a short cycle exists."""
    n = model.n
    succ = model.successors(store)
    has_pred = [False] * n
    for j in succ:
        if j >= 0:
            has_pred[j] = True
    out: list[Chain] = []
    seen = [False] * n
    for a in range(n):
        if has_pred[a] or succ[a] < 0:
            continue
        v, length = a, 1
        seen[a] = True
        while succ[v] >= 0 and length <= n:
            v = succ[v]
            seen[v] = True
            length += 1
        out.append(Chain(a, v, length))
    short_cycle = False
    for a in range(n):
        if seen[a] or succ[a] < 0:
            continue
        v, length = a, 0
        while not seen[v] and succ[v] >= 0:
            seen[v] = True
            v = succ[v]
            length += 1
        if v == a and length < n:
            short_cycle = True
    return out, short_cycle


class SubtourElim(Propagator):
    """Forbid closing any chain shorter than ``n`` into a cycle."""

    name = "subtour"

    def __init__(self, model: CircuitModel) -> None:
        super().__init__(scope=model.s_mask)
        self.model = model

    def propagate(self, store: Store) -> PropStatus:
        n = self.model.n
        while True:
            found, short_cycle = chains(self.model, store)
            if short_cycle:
                return PropStatus.FAILED
            again = False
            for ch in found:
                if ch.length < n and store.remove_value(ch.end, ch.start):
                    if store.failed:
                        return PropStatus.FAILED
                    if store.is_assigned(ch.end):
                        again = True
            if not again:
                return PropStatus.FIX


class InverseChannel(Propagator):
    """S_i = j iff P_j = i: assignments are mirrored, then j stays in dom(S_i)
    only while i is in dom(P_j) and vice versa."""

    name = "inverse"

    def __init__(self, model: CircuitModel) -> None:
        super().__init__(scope=model.all_mask)
        self.n = model.n

    def propagate(self, store: Store) -> PropStatus:
        n = self.n
        masks = store.masks
        changed = False
        for src, dst in ((0, n), (n, 0)):
            support = [0] * n
            forced = [0] * n
            for i in range(n):
                m = masks[src + i]
                bit = 1 << i
                if m & (m - 1):
                    for j in bits(m):
                        support[j] |= bit
                else:
                    j = m.bit_length() - 1
                    support[j] |= bit
                    forced[j] |= bit
            for j in range(n):
                keep = forced[j] or support[j]
                if masks[dst + j] & ~keep:
                    store.restrict(dst + j, keep)
                    if store.failed:
                        return PropStatus.FAILED
                    changed = True
        return PropStatus.NOFIX if changed else PropStatus.FIX


class CostBounds(Propagator):
    """Sum-of-row bounds on the cost and reduced-sum edge filtering."""

    name = "cost"

    def __init__(self, model: CircuitModel) -> None:
        super().__init__(scope=model.s_mask, scope_iv=1 << COST)
        self.model = model

    def propagate(self, store: Store) -> PropStatus:
        n = self.model.n
        w = self.model.w
        masks = store.masks
        lo_sum = hi_sum = 0
        mins = [0] * n
        for i in range(n):
            row = w[i]
            m = masks[i]
            if not m & (m - 1):
                mins[i] = c = row[m.bit_length() - 1]
                lo_sum += c
                hi_sum += c
                continue
            lo = hi = row[(m & -m).bit_length() - 1]
            for j in bits(m):
                c = row[j]
                if c < lo:
                    lo = c
                elif c > hi:
                    hi = c
            mins[i] = lo
            lo_sum += lo
            hi_sum += hi
        store.set_min(COST, lo_sum)
        store.set_max(COST, hi_sum)
        if store.failed:
            return PropStatus.FAILED
        cap = store.hi[COST] - lo_sum
        changed = False
        for i in range(n):
            m = masks[i]
            if not m & (m - 1):
                continue
            limit = cap + mins[i]
            row = w[i]
            drop = 0
            for j in bits(m):
                if row[j] > limit:
                    drop |= 1 << j
            if drop:
                store.restrict(i, ~drop)
                changed = True
        if store.failed:
            return PropStatus.FAILED
        return PropStatus.NOFIX if changed else PropStatus.FIX


def standard_propagators(model: CircuitModel) -> list[Propagator]:
    return [AllDifferentValue(model.S), SubtourElim(model), InverseChannel(model),
            CostBounds(model)]
