"""Warnsdorff-style branching for the successor model.

Variables are picked along the path fixed so far from a start node; values by
increasing edge weight, with a small chance of taking the second cheapest.
"""

from __future__ import annotations

import random

from .circuit import CircuitModel
from .kernel import Store, bits

EPSILON = 0.1


class WarnsdorffBrancher:
    def __init__(self, model: CircuitModel, start: int = 0, epsilon: float = EPSILON,
                 seed: int | None = 0) -> None:
        if not 0 <= start < model.n:
            raise ValueError(f"start node {start} out of range 0..{model.n - 1}")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        self.model = model
        self.start = start
        self.epsilon = epsilon
        self.seed = seed
        self.rng = random.Random(seed)

    def fork(self, seed: int | None = None) -> WarnsdorffBrancher:
        return WarnsdorffBrancher(self.model, self.start, self.epsilon,
                                  self.seed if seed is None else seed)

    def select_variable(self, store: Store) -> int | None:
        """Successor variable at the end of the fixed path, or None once every
        successor is assigned."""
        masks = store.masks
        n = self.model.n
        v = self.start
        visited = 0
        for _ in range(n):
            m = masks[v]
            if m & (m - 1):
                return v
            visited |= 1 << v
            v = m.bit_length() - 1
            if (visited >> v) & 1:
                break
        for i in range(n):
            m = masks[i]
            if m & (m - 1):
                return i
        return None

    def select_value(self, store: Store, var: int) -> int:
        row = self.model.w[var]
        vals = sorted(bits(store.masks[var]), key=lambda v: (row[v], v))
        if self.epsilon > 0 and len(vals) > 1 and self.rng.random() < self.epsilon:
            return self.rng.choice(vals[:2])
        return vals[0]

    def select(self, store: Store) -> tuple[int, int] | None:
        var = self.select_variable(store)
        if var is None:
            return None
        return var, self.select_value(store, var)
