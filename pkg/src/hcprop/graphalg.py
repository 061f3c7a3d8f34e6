"""Graph algorithms behind the bound propagators.

Graphs are undirected over nodes ``0..n-1``; edges are ``(i, j, w)`` triples.
Functions that scan edges "in increasing order" expect callers to pass them
sorted by ``(w, i, j)``, which is also the tie-break rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

Edge = tuple[int, int, int]


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


@dataclass
class SpanningTree:
    edges: list[Edge]
    degree: list[int]
    weight: int


@dataclass
class OneTree:
    n1: int
    tree_edges: list[Edge]
    n1_edges: list[Edge]
    weight: int

    @property
    def edges(self) -> list[Edge]:
        return self.tree_edges + self.n1_edges

    def degrees(self, n: int) -> list[int]:
        deg = [0] * n
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_circuit(self, n: int) -> bool:
        # n edges, connected, spanning: all degrees 2 means one Hamiltonian cycle
        return all(d == 2 for d in self.degrees(n))


def kruskal_with_fixed(n: int, edges: Iterable[Edge], fixed: Sequence[Edge] = (),
                       nodes: Sequence[int] | None = None) -> SpanningTree | None:
    """Minimum spanning tree that contains every ``fixed`` edge.

    ``nodes`` restricts the tree to a node subset (edges touching other nodes
    are ignored).  Returns None when the fixed edges contain a cycle or the
    graph is disconnected.
    """
    node_list = range(n) if nodes is None else nodes
    inside = [nodes is None] * n
    for v in node_list:
        inside[v] = True
    need = len(node_list) - 1
    uf = UnionFind(n)
    tree: list[Edge] = []
    degree = [0] * n
    weight = 0
    for e in fixed:
        i, j, w = e
        if not uf.union(i, j):
            return None
        tree.append(e)
        degree[i] += 1
        degree[j] += 1
        weight += w
    if len(tree) < need:
        for e in edges:
            i, j, w = e
            if not (inside[i] and inside[j]) or not uf.union(i, j):
                continue
            tree.append(e)
            degree[i] += 1
            degree[j] += 1
            weight += w
            if len(tree) == need:
                break
    if len(tree) != need:
        return None
    return SpanningTree(tree, degree, weight)


def min_one_tree(n: int, edges: Sequence[Edge], n1: int,
                 fixed: Sequence[Edge] = ()) -> OneTree | None:
    """Minimum 1-tree for node ``n1`` containing the ``fixed`` edges.

    Fixed edges go either to the tree or to the ``n1`` pair.  Edges are then
    scanned in increasing order: ``n1``-edges fill the pair until it holds two,
    the rest build a Kruskal tree over the other nodes.  Returns None when that
    is impossible (disconnected rest, fewer than two ``n1`` edges, more than two
    fixed ``n1`` edges or a fixed cycle).
    """
    uf = UnionFind(n)
    tree: list[Edge] = []
    pair: list[Edge] = []
    for e in fixed:
        i, j, _ = e
        if i == n1 or j == n1:
            pair.append(e)
        elif not uf.union(i, j):
            return None
        else:
            tree.append(e)
    if len(pair) > 2:
        return None
    need = n - 2
    in_pair = {(min(i, j), max(i, j)) for i, j, _ in pair}
    for e in edges:
        if len(tree) == need and len(pair) == 2:
            break
        i, j, _ = e
        if i == n1 or j == n1:
            if len(pair) < 2 and (min(i, j), max(i, j)) not in in_pair:
                pair.append(e)
                in_pair.add((min(i, j), max(i, j)))
        elif len(tree) < need and uf.union(i, j):
            tree.append(e)
    if len(tree) != need or len(pair) != 2:
        return None
    weight = sum(w for _, _, w in tree) + sum(w for _, _, w in pair)
    return OneTree(n1, tree, pair, weight)


def greedy_matching(nodes: Iterable[int], allowed_edges: Iterable[Edge]
                    ) -> tuple[list[Edge], set[int]]:
    """Greedy matching on ``nodes`` over ``allowed_edges`` (taken in the given
    order, which should be ascending weight).  Returns the matching and the
    nodes left unmatched."""
    free = set(nodes)
    matching: list[Edge] = []
    for e in allowed_edges:
        if not free:
            break
        i, j, _ = e
        if i in free and j in free and i != j:
            matching.append(e)
            free.discard(i)
            free.discard(j)
    return matching, free


def euler_circuit(edges: Sequence[tuple[int, int]], start: int | None = None) -> list[int]:
    """Hierholzer's algorithm (stack form) on an undirected multigraph.

    Returns the closed walk as a node list whose first and last entries are
    equal, so it has ``len(edges) + 1`` entries.
    """
    if not edges:
        return [] if start is None else [start]
    adj: dict[int, list[tuple[int, int]]] = {}
    for k, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append((b, k))
        adj.setdefault(b, []).append((a, k))
    odd = [v for v, lst in adj.items() if len(lst) % 2]
    if odd:
        raise ValueError(f"no Euler circuit: odd degree at nodes {sorted(odd)}")
    if start is None:
        start = edges[0][0]
    if start not in adj:
        raise ValueError(f"start node {start} has no edges")
    used = [False] * len(edges)
    ptr = {v: 0 for v in adj}
    stack = [start]
    walk: list[int] = []
    while stack:
        v = stack[-1]
        lst = adj[v]
        p = ptr[v]
        while p < len(lst) and used[lst[p][1]]:
            p += 1
        ptr[v] = p
        if p == len(lst):
            walk.append(stack.pop())
        else:
            u, k = lst[p]
            used[k] = True
            stack.append(u)
    if not all(used):
        raise ValueError("no Euler circuit: multigraph is disconnected")
    walk.reverse()
    return walk


def shortcut(walk: Sequence[int], weights: Sequence[Sequence[int]],
             in_subgraph: Callable[[int, int], bool] | None = None
             ) -> tuple[list[int], int, bool]:
    """Turn a closed walk into a Hamiltonian circuit by skipping repeats.

    Returns ``(circuit, weight, used_only_subgraph)``: the circuit lists each
    node once (closing edge implied), the weight uses the full graph, and the
    flag tells whether every circuit edge satisfies ``in_subgraph``.
    """
    seen: set[int] = set()
    tour: list[int] = []
    for v in walk:
        if v not in seen:
            seen.add(v)
            tour.append(v)
    total = 0
    only = True
    for k in range(len(tour)):
        a, b = tour[k - 1], tour[k]
        total += weights[a][b]
        if only and in_subgraph is not None and not in_subgraph(a, b):
            only = False
    return tour, total, only
