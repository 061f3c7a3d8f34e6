import itertools
import random

import pytest

from conftest import model_of, random_model
from hcprop.circuit import (COST, AllDifferentValue, CircuitModel, CostBounds, InverseChannel,
                            SubtourElim, chains, standard_propagators)
from hcprop.branching import WarnsdorffBrancher
from hcprop.kernel import Asset, PropStatus, Store, propagate_fixpoint, search_all
from hcprop.reference import all_circuits
from hcprop.tsplib import TspInstance


def test_alldiff_examples():
    p = AllDifferentValue([0, 1])
    s = Store.from_domains([{1}, {1, 2}])
    assert p.propagate(s) is not PropStatus.FAILED and s.values(1) == [2]
    s = Store.from_domains([{0, 1, 2}, {1, 2}])
    before = s.copy()
    assert p.propagate(s) is PropStatus.FIX and s == before
    assert p.propagate(Store.from_domains([{1}, {1}])) is PropStatus.FAILED


def test_alldiff_cascades():
    s = Store.from_domains([{0}, {0, 1}, {1, 2}])
    assert AllDifferentValue([0, 1, 2]).propagate(s) is PropStatus.SUBSUMED
    assert [s.value(i) for i in range(3)] == [0, 1, 2]


def line(n):
    return model_of([(10 * i, (i * i) % 7) for i in range(n)])


def test_subtour_closing_three_cycle():
    m = line(4)
    s = m.root_store()
    s.assign(0, 1)
    s.assign(1, 2)
    SubtourElim(m).propagate(s)
    assert not s.contains(2, 0)


def test_subtour_full_circuit_allowed():
    m = line(3)
    s = m.root_store()
    s.assign(0, 1)
    s.assign(1, 2)
    assert SubtourElim(m).propagate(s) is not PropStatus.FAILED
    assert s.contains(2, 0)


def test_subtour_two_cycle():
    m = line(4)
    s = m.root_store()
    s.assign(0, 1)
    SubtourElim(m).propagate(s)
    assert not s.contains(1, 0)


def test_subtour_detects_closed_short_cycle():
    m = line(5)
    s = m.root_store()
    for a, b in [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)]:
        s.assign(a, b)
    assert SubtourElim(m).propagate(s) is PropStatus.FAILED
    found, short = chains(m, s)
    assert short and found == []


@pytest.mark.parametrize("seed", range(30))
def test_subtour_never_removes_circuit_edges(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    m = random_model(n, seed)
    circuits = all_circuits(n)
    target = rng.choice(circuits)
    s = m.root_store()
    for i in rng.sample(range(n), rng.randint(0, n - 1)):
        s.assign(i, target[i])
    before = s.copy()
    SubtourElim(m).propagate(s)
    consistent = [c for c in circuits if all(before.contains(i, c[i]) for i in range(n))]
    for c in consistent:
        assert all(s.contains(i, c[i]) for i in range(n))


def test_cost_bounds_assigned_tour():
    m = random_model(6, 3)
    s = m.root_store()
    succ = [1, 2, 3, 4, 5, 0]
    for i, j in enumerate(succ):
        s.assign(i, j)
    CostBounds(m).propagate(s)
    assert s.lo[COST] == s.hi[COST] == m.succ_cost(succ)


def test_cost_bounds_row_minima():
    tri = CircuitModel(TspInstance("tri", ((0, 0), (1, 0), (0, 2)),
                                   ((0, 1, 2), (1, 0, 3), (2, 3, 0)), ()))
    s = tri.root_store()
    CostBounds(tri).propagate(s)
    assert s.lo[COST] == 1 + 1 + 2
    assert s.hi[COST] == 2 + 3 + 3


def test_cost_below_every_tour_fails():
    m = random_model(5, 8)
    floor = sum(min(m.w[i][j] for j in range(5) if j != i) for i in range(5))
    s = m.root_store()
    s.set_max(COST, floor - 1)
    assert not propagate_fixpoint(s, standard_propagators(m))
    # a cap just below the optimum survives the root but has no solutions
    best = min(m.succ_cost(c) for c in all_circuits(5))
    s = m.root_store()
    s.set_max(COST, best - 1)
    assert propagate_fixpoint(s, standard_propagators(m))
    assert search_all(Asset("std", standard_propagators(m), WarnsdorffBrancher(m)), s) == []


def test_cost_bounds_reduced_filtering():
    m = random_model(6, 4)
    s = m.root_store()
    p = CostBounds(m)
    p.propagate(s)
    lo = s.lo[COST]
    s.set_max(COST, lo + 5)
    p.propagate(s)
    for i in range(6):
        row_min = min(m.w[i][j] for j in range(6) if j != i)
        for j in s.values(i):
            assert m.w[i][j] - row_min <= 5


def test_inverse_channel_examples():
    m = random_model(4, 0)
    s = m.root_store()
    s.assign(0, 1)
    InverseChannel(m).propagate(s)
    assert s.values(4 + 1) == [0]
    s = m.root_store()
    s.remove_value(0, 2)
    InverseChannel(m).propagate(s)
    assert not s.contains(4 + 2, 0)
    s = m.root_store()
    before = s.copy()
    assert InverseChannel(m).propagate(s) is PropStatus.FIX and s == before


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_standard_props_check_all_assignments(n):
    m = random_model(n, 100 + n)
    good = set(all_circuits(n))
    props = standard_propagators(m)
    rng = random.Random(n)
    cands = list(good) + [tuple(rng.randrange(n) for _ in range(n)) for _ in range(200)]
    cands += list(itertools.islice(itertools.permutations(range(n)), 200))
    for succ in cands:
        s = m.root_store()
        for i, j in enumerate(succ):
            s.assign(i, j)
            s.assign(n + j, i)
        ok = propagate_fixpoint(s, props, check=True)
        assert ok == (succ in good), succ
        if ok:
            assert s.lo[COST] == s.hi[COST] == m.succ_cost(succ)


def test_tiny_instances_rejected():
    with pytest.raises(ValueError):
        model_of([(0, 0), (1, 1)])
