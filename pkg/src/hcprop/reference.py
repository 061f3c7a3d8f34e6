"""Slow, obviously-correct reference computations used to check the solver.

Nothing here shares code with the propagators or graph algorithms it checks.
"""

from __future__ import annotations

import itertools
from typing import Sequence

Weights = Sequence[Sequence[int]]


def held_karp(w: Weights) -> tuple[int, list[int]]:
    """Exact optimal tour by dynamic programming over subsets (tour starts at 0)."""
    n = len(w)
    INF = float("inf")
    full = 1 << (n - 1)
    # dp[mask][j]: cheapest path from 0 through the cities in mask, ending at j+1
    dp = [[INF] * (n - 1) for _ in range(full)]
    parent = [[-1] * (n - 1) for _ in range(full)]
    for j in range(n - 1):
        dp[1 << j][j] = w[0][j + 1]
    for mask in range(1, full):
        row = dp[mask]
        for j in range(n - 1):
            cur = row[j]
            if cur == INF or not (mask >> j) & 1:
                continue
            wj = w[j + 1]
            for k in range(n - 1):
                if (mask >> k) & 1:
                    continue
                nm = mask | (1 << k)
                c = cur + wj[k + 1]
                if c < dp[nm][k]:
                    dp[nm][k] = c
                    parent[nm][k] = j
    best, last = INF, -1
    for j in range(n - 1):
        c = dp[full - 1][j] + w[j + 1][0]
        if c < best:
            best, last = c, j
    tour = []
    mask = full - 1
    while last != -1:
        tour.append(last + 1)
        prev = parent[mask][last]
        mask ^= 1 << last
        last = prev
    return int(best), [0] + tour[::-1]


def all_circuits(n: int) -> list[tuple[int, ...]]:
    """Every Hamiltonian circuit as a successor tuple."""
    out = []
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        succ = [0] * n
        for k in range(n):
            succ[order[k]] = order[(k + 1) % n]
        out.append(tuple(succ))
    return out


def succ_weight(w: Weights, succ: Sequence[int]) -> int:
    return sum(w[i][j] for i, j in enumerate(succ))


def _is_tree(nodes: Sequence[int], edges) -> bool:
    label = {v: v for v in nodes}

    def root(v):
        while label[v] != v:
            v = label[v]
        return v

    for i, j, _ in edges:
        a, b = root(i), root(j)
        if a == b:
            return False
        label[a] = b
    return len(edges) == len(nodes) - 1


def brute_min_spanning_tree(n: int, edges, fixed=()) -> int | None:
    """Minimum weight over all spanning trees containing ``fixed``."""
    fixed = list(fixed)
    rest = [e for e in edges if e not in fixed]
    best = None
    for combo in itertools.combinations(rest, n - 1 - len(fixed)):
        tree = fixed + list(combo)
        if _is_tree(range(n), tree):
            wt = sum(e[2] for e in tree)
            best = wt if best is None or wt < best else best
    return best


def brute_min_one_tree(n: int, edges, n1: int) -> int | None:
    """Minimum 1-tree weight for ``n1`` by enumerating every spanning tree of
    the other nodes and every pair of ``n1`` edges."""
    others = [v for v in range(n) if v != n1]
    inner = [e for e in edges if n1 not in (e[0], e[1])]
    incident = [e for e in edges if n1 in (e[0], e[1])]
    best_tree = None
    for combo in itertools.combinations(inner, n - 2):
        if _is_tree(others, combo):
            wt = sum(e[2] for e in combo)
            best_tree = wt if best_tree is None or wt < best_tree else best_tree
    pairs = [a[2] + b[2] for a, b in itertools.combinations(incident, 2)]
    if best_tree is None or not pairs:
        return None
    return best_tree + min(pairs)


def luby_reference(count: int) -> list[int]:
    """First ``count`` Luby numbers via the doubling construction
    S_1 = (1), S_k = S_{k-1} S_{k-1} 2^(k-1)."""
    seq = [1]
    k = 1
    while len(seq) < count:
        k += 1
        seq = seq + seq + [2 ** (k - 1)]
    return seq[:count]
