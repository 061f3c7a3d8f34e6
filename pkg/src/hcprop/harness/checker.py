"""Independent cost-circuit checker.

Deliberately naive: it only uses the weight matrix and plain Python, and is
the ground truth the oracle suite and the run reports validate against.
"""

from __future__ import annotations

from typing import Sequence


def check_cost_circuit(weights: Sequence[Sequence[int]], succ: Sequence[int],
                       cost: int | None) -> bool:
    n = len(weights)
    if len(succ) != n:
        return False
    if any(not isinstance(s, int) or s < 0 or s >= n for s in succ):
        return False
    visited = set()
    v = 0
    while v not in visited:
        visited.add(v)
        v = succ[v]
    if v != 0 or len(visited) != n:
        return False
    total = 0
    for i in range(n):
        total += weights[i][succ[i]]
    return cost is None or total == cost
