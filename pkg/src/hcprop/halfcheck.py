"""Half-checking propagators for cost-circuit.

Each of these may remove genuine solutions.  What they all keep is the
half-checking guarantee: once every successor is assigned they decide the
constraint exactly (see :meth:`CircuitModel.full_check`), so a fully assigned
store they accept is always a Hamiltonian circuit with the right cost.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .circuit import COST, CircuitModel
from .geometry import Segment, build_index, exact_points, segments_cross
from .graphalg import (OneTree, euler_circuit, greedy_matching, kruskal_with_fixed,
                       min_one_tree, shortcut)
from .kernel import FailPropagator, Propagator, PropStatus, Store, bits

NCL_NODE_LIMIT = 130
EDGE_LIST_REUSE = 0.25


class NclTooLarge(ValueError):
    pass


class HalfChecking(Propagator):
    half_checking = True

    def __init__(self, model: CircuitModel, low_priority: bool = False) -> None:
        super().__init__(scope=model.all_mask, scope_iv=1 << COST,
                         watch=model.s_mask, watch_iv=0)
        self.model = model
        self.low_priority = low_priority

    def propagate(self, store: Store) -> PropStatus:
        decided = self.model.full_check(store)
        if decided is not None:
            return decided
        return self.filter(store)

    def filter(self, store: Store) -> PropStatus:
        raise NotImplementedError


def _remove_edge(model: CircuitModel, store: Store, a: int, b: int) -> None:
    n = model.n
    store.remove_value(a, b)
    store.remove_value(b, a)
    store.remove_value(n + a, b)
    store.remove_value(n + b, a)


# -- no crossing lines --------------------------------------------------------

@dataclass
class ClTable:
    """Crossing lines of every undirected edge ``(i, j)``, ``i < j``.

    ``removal[(i, j)][k]`` is the bitmask of ``l`` with ``{k, l}`` crossing
    ``{i, j}``: the values to take out of ``S_k`` once ``{i, j}`` is used.
    """

    n: int
    cl: dict[tuple[int, int], frozenset[tuple[int, int]]]
    removal: dict[tuple[int, int], list[tuple[int, int]]] = field(repr=False)

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.cl.values())


def ncl_precompute(inst, node_limit: int = NCL_NODE_LIMIT) -> ClTable:
    n = inst.n
    if n > node_limit:
        raise NclTooLarge(
            f"crossing-line table for {n} nodes refused (limit {node_limit}); the table "
            f"has O(n^4) entries, use wncl instead or raise the limit")
    pts = exact_points(inst.coords)
    segs = [Segment(pts[i], pts[j], (i, j)) for i in range(n) for j in range(i + 1, n)]
    index = build_index(segs)
    cl = {s.id: frozenset(index.query_crossing(s)) for s in segs}
    removal = {}
    for e, crossing in cl.items():
        per_node = [0] * n
        for k, l in crossing:
            per_node[k] |= 1 << l
            per_node[l] |= 1 << k
        removal[e] = [(k, m) for k, m in enumerate(per_node) if m]
    return ClTable(n, cl, removal)


class NoCrossingLines(HalfChecking):
    """For each used edge, remove every edge crossing it."""

    name = "ncl"

    def __init__(self, model: CircuitModel, table: ClTable | None = None) -> None:
        super().__init__(model)
        self.table = table if table is not None else ncl_precompute(model.inst)

    def filter(self, store: Store) -> PropStatus:
        n = self.model.n
        masks = store.masks
        done = 0
        again = True
        while again:
            again = False
            for i in range(n):
                m = masks[i]
                if (done >> i) & 1 or m & (m - 1):
                    continue
                done |= 1 << i
                j = m.bit_length() - 1
                for k, drop in self.table.removal[(i, j) if i < j else (j, i)]:
                    if masks[k] & drop:
                        store.restrict(k, ~drop)
                        if store.failed:
                            return PropStatus.FAILED
                        if not masks[k] & (masks[k] - 1):
                            again = True
        return PropStatus.FIX


class WarnsdorffNoCrossing(HalfChecking):
    """Along the path fixed from ``start``, drop successors of its last node
    whose edge crosses the path."""

    name = "wncl"

    def __init__(self, model: CircuitModel, start: int = 0) -> None:
        super().__init__(model)
        self.start = start
        self.points = exact_points(model.inst.coords)

    def fixed_path(self, store: Store) -> list[int]:
        masks = store.masks
        path = [self.start]
        on_path = 1 << self.start
        v = self.start
        while True:
            m = masks[v]
            if m & (m - 1):
                return path
            v = m.bit_length() - 1
            if (on_path >> v) & 1:
                return path
            path.append(v)
            on_path |= 1 << v

    def filter(self, store: Store) -> PropStatus:
        path = self.fixed_path(store)
        if len(path) < 3:
            return PropStatus.FIX
        last = path[-1]
        m = store.masks[last]
        if not m & (m - 1):
            return PropStatus.FIX
        pts = self.points
        fixed = [Segment(pts[path[k]], pts[path[k + 1]]) for k in range(len(path) - 2)]
        drop = 0
        for v in bits(m):
            cand = Segment(pts[last], pts[v])
            if any(segments_cross(cand, s) for s in fixed):
                drop |= 1 << v
        if drop:
            store.restrict(last, ~drop)
            if store.failed:
                return PropStatus.FAILED
        return PropStatus.FIX


# -- Christofides bounds -----------------------------------------------------

def subgraph_edges(model: CircuitModel, adj: list[int],
                   threshold: float = EDGE_LIST_REUSE) -> list[tuple[int, int, int]]:
    """Edges of G_S in increasing (w, i, j) order.

    Dense subgraphs filter the instance's presorted edge list; sparse ones
    rebuild and sort from the domains.
    """
    n = model.n
    count = sum(m.bit_count() for m in adj) // 2
    if count > threshold * (n * (n - 1) // 2):
        return [e for e in model.inst.edges_by_weight if (adj[e[0]] >> e[1]) & 1]
    w = model.w
    edges = [(i, j, w[i][j]) for i in range(n) for j in bits(adj[i] >> (i + 1) << (i + 1))]
    edges.sort(key=lambda e: (e[2], e[0], e[1]))
    return edges


@dataclass
class Witness:
    tour: list[int]
    weight: int
    in_subgraph: bool


class ChristofidesBound(HalfChecking):
    """Caps the cost by the weight of a Christofides-style tour built on G_S."""

    name = "cbp"

    def __init__(self, model: CircuitModel, threshold: float = EDGE_LIST_REUSE) -> None:
        super().__init__(model, low_priority=True)
        self.threshold = threshold
        self.last: Witness | None = None

    def fork(self, seed=None):
        new = super().fork(seed)
        new.last = None
        return new

    def witness(self, store: Store) -> Witness | None | bool:
        """The shortcut tour for ``store``; False when G_S has no spanning tree,
        None when no tour could be completed."""
        model = self.model
        n = model.n
        adj = model.undirected_adjacency(store)
        edges = subgraph_edges(model, adj, self.threshold)
        tree = kruskal_with_fixed(n, edges, model.fixed_edges(store))
        if tree is None:
            return False
        odd = [v for v in range(n) if tree.degree[v] % 2]
        matching, left = greedy_matching(odd, edges)
        if left:
            extra, left = greedy_matching(sorted(left), model.inst.edges_by_weight)
            if left:
                return None
            matching += extra
        multigraph = [(i, j) for i, j, _ in tree.edges] + [(i, j) for i, j, _ in matching]
        walk = euler_circuit(multigraph, start=0)
        tour, weight, only = shortcut(walk, model.w, lambda a, b: (adj[a] >> b) & 1 == 1)
        return Witness(tour, weight, only)

    def filter(self, store: Store) -> PropStatus:
        wit = self.witness(store)
        if wit is False:
            return PropStatus.FAILED
        if wit is None:
            return PropStatus.FIX
        self.last = wit
        store.set_max(COST, wit.weight)
        return PropStatus.FAILED if store.failed else PropStatus.FIX


# -- heuristic 1-tree ----------------------------------------------------------

class OneTreePropagator(HalfChecking):
    """Minimum 1-tree reasoning.

    Raises the cost floor to the 1-tree weight, takes the 1-tree as the
    solution when it is a circuit, and otherwise deletes the longest free
    tree edge at a node of tree-degree above two (the solution-removing step).
    """

    name = "onetree"

    def __init__(self, model: CircuitModel, seed: int | None = 0,
                 threshold: float = EDGE_LIST_REUSE) -> None:
        super().__init__(model, low_priority=True)
        self.seed = seed
        self.rng = random.Random(seed)
        self.threshold = threshold
        self.last: OneTree | None = None

    def fork(self, seed=None):
        new = super().fork(seed)
        new.seed = self.seed if seed is None else seed
        new.rng = random.Random(new.seed)
        new.last = None
        return new

    def choose_node(self, store: Store, adj: list[int]) -> int | None:
        """Dedicated node: fewest fixed edges, then largest sum of its two
        cheapest available edges; random among ties."""
        model = self.model
        n = model.n
        nfixed = [0] * n
        for i, j, _ in model.fixed_edges(store):
            nfixed[i] += 1
            nfixed[j] += 1
        least = min(nfixed)
        best_score, best = -1, []
        for v in range(n):
            if nfixed[v] != least:
                continue
            ws = sorted(model.w[v][u] for u in bits(adj[v]))
            if len(ws) < 2:
                return None
            score = ws[0] + ws[1]
            if score > best_score:
                best_score, best = score, [v]
            elif score == best_score:
                best.append(v)
        return best[0] if len(best) == 1 else self.rng.choice(best)

    def filter(self, store: Store) -> PropStatus:
        model = self.model
        n = model.n
        adj = model.undirected_adjacency(store)
        n1 = self.choose_node(store, adj)
        if n1 is None:
            return PropStatus.FAILED
        edges = subgraph_edges(model, adj, self.threshold)
        fixed = model.fixed_edges(store)
        ot = min_one_tree(n, edges, n1, fixed)
        if ot is None:
            return PropStatus.FAILED
        self.last = ot
        store.set_min(COST, ot.weight)
        if store.failed:
            return PropStatus.FAILED
        if ot.is_circuit(n):
            return self._take_circuit(store, ot)
        deg = [0] * n
        for i, j, _ in ot.tree_edges:
            deg[i] += 1
            deg[j] += 1
        top = max(deg)
        if top <= 2:
            return PropStatus.FIX
        v = deg.index(top)
        fixed_set = {(i, j) for i, j, _ in fixed}
        free = [(w, j if i == v else i) for i, j, w in ot.tree_edges
                if v in (i, j) and (i, j) not in fixed_set]
        if not free:
            return PropStatus.FIX
        _, u = max(free)
        _remove_edge(model, store, v, u)
        return PropStatus.FAILED if store.failed else PropStatus.FIX

    def _take_circuit(self, store: Store, ot: OneTree) -> PropStatus:
        model = self.model
        n = model.n
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for i, j, _ in ot.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        masks = store.masks
        for first in sorted(nbrs[0]):
            order = [0, first]
            while len(order) < n:
                a, b = nbrs[order[-1]]
                order.append(b if a == order[-2] else a)
            succ = [0] * n
            for k in range(n):
                succ[order[k]] = order[(k + 1) % n]
            if all((masks[i] >> succ[i]) & 1 and (masks[n + succ[i]] >> i) & 1
                   for i in range(n)):
                for i in range(n):
                    store.assign(i, succ[i])
                    store.assign(n + succ[i], i)
                return PropStatus.FAILED if store.failed else PropStatus.NOFIX
        return PropStatus.FIX


HALF_CHECKING = ("ncl", "wncl", "cbp", "onetree", "fail")


def make_propagator(name: str, model: CircuitModel, *, seed: int = 0, start: int = 0,
                    ncl_limit: int = NCL_NODE_LIMIT, table: ClTable | None = None,
                    threshold: float = EDGE_LIST_REUSE) -> Propagator:
    if name == "ncl":
        return NoCrossingLines(model, table if table is not None
                               else ncl_precompute(model.inst, ncl_limit))
    if name == "wncl":
        return WarnsdorffNoCrossing(model, start)
    if name == "cbp":
        return ChristofidesBound(model, threshold)
    if name == "onetree":
        return OneTreePropagator(model, seed, threshold)
    if name == "fail":
        return FailPropagator()
    raise ValueError(f"unknown propagator {name!r}; choose from {', '.join(HALF_CHECKING)}")


def parse_props(text: str | None) -> list[str]:
    if not text:
        return []
    names = [t.strip() for t in text.split(",") if t.strip()]
    if names == ["all"]:
        return ["wncl", "cbp", "onetree"]
    for t in names:
        if t not in HALF_CHECKING:
            raise ValueError(f"unknown propagator {t!r}; choose from {', '.join(HALF_CHECKING)}")
    return names
