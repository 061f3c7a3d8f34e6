import itertools
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hcprop.graphalg import (UnionFind, euler_circuit, greedy_matching, kruskal_with_fixed,
                             min_one_tree, shortcut)
from hcprop.reference import brute_min_one_tree, brute_min_spanning_tree, held_karp
from hcprop.tsplib import random_instance


def ordered(edges):
    return sorted(edges, key=lambda e: (e[2], e[0], e[1]))


TRI = ordered([(0, 1, 1), (1, 2, 2), (0, 2, 3)])


def test_kruskal_triangle():
    t = kruskal_with_fixed(3, TRI)
    assert t.weight == 3 and sorted(t.edges) == [(0, 1, 1), (1, 2, 2)]


def test_kruskal_with_fixed_edge():
    t = kruskal_with_fixed(3, TRI, fixed=[(0, 2, 3)])
    assert t.weight == 4 and sorted(t.edges) == [(0, 1, 1), (0, 2, 3)]


def test_kruskal_disconnected_and_fixed_cycle():
    assert kruskal_with_fixed(4, [(0, 1, 1), (2, 3, 1)]) is None
    assert kruskal_with_fixed(3, TRI, fixed=TRI) is None


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(3)


def random_graph(rng, n, p):
    edges = [(i, j, rng.randint(1, 20)) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return ordered(edges)


@pytest.mark.parametrize("seed", range(40))
def test_kruskal_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    edges = random_graph(rng, n, 0.6)
    t = kruskal_with_fixed(n, edges)
    best = brute_min_spanning_tree(n, edges)
    assert (t.weight if t else None) == best


def test_one_tree_unit_square():
    edges = ordered([(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1), (1, 3, 1)])
    ot = min_one_tree(4, edges, 0)
    assert ot.weight == 4 == brute_min_one_tree(4, edges, 0)


def test_one_tree_of_circuit_is_the_circuit():
    n = 6
    cyc = ordered([(i, (i + 1) % n, i + 1) if i < (i + 1) % n else ((i + 1) % n, i, i + 1)
                   for i in range(n)])
    ot = min_one_tree(n, cyc, 3)
    assert ot.is_circuit(n) and ot.weight == sum(e[2] for e in cyc)


def test_one_tree_degenerate():
    # leaf n1 of a star: one incident edge only
    star = ordered([(0, k, k) for k in range(1, 5)])
    assert min_one_tree(5, star, 4) is None
    # removing the centre leaves isolated nodes
    assert min_one_tree(5, star, 0) is None


@pytest.mark.parametrize("seed", range(20))
def test_one_tree_matches_brute_force_and_bounds_tour(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 8)
    inst = random_instance(n, seed)
    n1 = rng.randrange(n)
    ot = min_one_tree(n, inst.edges_by_weight, n1)
    assert ot.weight == brute_min_one_tree(n, inst.edges_by_weight, n1)
    assert ot.weight <= held_karp(inst.weights)[0]


def test_greedy_matching_cases():
    assert greedy_matching([0, 1], [(0, 1, 5)]) == ([(0, 1, 5)], set())
    m, left = greedy_matching([0, 1, 2, 3], [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    assert m == [(0, 1, 1), (2, 3, 1)] and left == set()
    assert greedy_matching([0, 1], []) == ([], {0, 1})


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(1, 5))),
       st.sets(st.integers(0, 9)))
def test_greedy_matching_is_a_matching(edges, nodes):
    m, left = greedy_matching(nodes, edges)
    used = [v for i, j, _ in m for v in (i, j)]
    assert len(used) == len(set(used))
    assert set(used) | left == set(nodes) and not set(used) & left


def walk_edges(walk):
    return Counter(frozenset(p) if p[0] != p[1] else (p[0],) for p in zip(walk, walk[1:]))


def test_euler_triangle():
    walk = euler_circuit([(0, 1), (1, 2), (2, 0)])
    assert len(walk) == 4 and walk[0] == walk[-1]
    assert walk_edges(walk) == Counter(frozenset(e) for e in [(0, 1), (1, 2), (2, 0)])


def test_euler_bowtie():
    edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]
    walk = euler_circuit(edges)
    assert len(walk) == 7 and walk[0] == walk[-1]
    assert walk_edges(walk) == Counter(frozenset(e) for e in edges)


def test_euler_doubled_edge():
    assert euler_circuit([(0, 1), (0, 1)], start=0) == [0, 1, 0]


def test_euler_rejects_odd_and_disconnected():
    with pytest.raises(ValueError):
        euler_circuit([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        euler_circuit([(0, 1), (0, 1), (2, 3), (2, 3)])


@given(st.lists(st.permutations(range(6)), min_size=1, max_size=4))
def test_euler_union_of_cycles(perms):
    edges = [(p[k], p[(k + 1) % 6]) for p in perms for k in range(6)]
    walk = euler_circuit(edges)
    assert len(walk) == len(edges) + 1
    assert walk_edges(walk) == Counter(frozenset(e) for e in edges)


W = [[0, 1, 2], [1, 0, 3], [2, 3, 0]]


def test_shortcut_triangle():
    tour, weight, only = shortcut([0, 1, 0, 2, 0], W)
    assert tour == [0, 1, 2] and weight == 1 + 3 + 2 and only


def test_shortcut_hamiltonian_unchanged():
    tour, weight, only = shortcut([0, 2, 1, 0], W, lambda a, b: True)
    assert tour == [0, 2, 1] and weight == 6 and only


def test_shortcut_leaves_subgraph():
    w = [[abs(i - j) for j in range(5)] for i in range(5)]
    sub = {frozenset(e) for e in [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (0, 4)]}
    # walk 0-1-2-1-3-4-0 skips back over 1 and shortcuts 2->3 ... all in sub
    tour, _, only = shortcut([0, 1, 2, 1, 3, 4, 0], w, lambda a, b: frozenset((a, b)) in sub)
    assert tour == [0, 1, 2, 3, 4] and only
    sub.discard(frozenset((2, 3)))
    _, _, only = shortcut([0, 1, 2, 1, 3, 4, 0], w, lambda a, b: frozenset((a, b)) in sub)
    assert not only


@given(st.permutations(range(7)), st.integers(0, 3))
def test_shortcut_gives_permutation(perm, extra):
    walk = list(perm) + list(perm[:extra]) + [perm[0]]
    w = [[abs(i - j) for j in range(7)] for i in range(7)]
    tour, weight, _ = shortcut(walk, w)
    assert sorted(tour) == list(range(7))
    assert weight == sum(w[tour[k - 1]][tour[k]] for k in range(7))


def test_brute_force_helpers_agree_on_tiny_complete_graph():
    edges = ordered([(i, j, i + j) for i, j in itertools.combinations(range(4), 2)])
    assert brute_min_spanning_tree(4, edges) == kruskal_with_fixed(4, edges).weight
